use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, Subspace};
use crate::ring::{Algebra, Poly};

use super::free::{FreeModule, GradedMap};
use super::resolution::{resolve_cokernel, resolve_quotient, tensor_left, tensor_modules, tensor_right, Resolution};

/// Graded dimensions, nonzero entries only.
pub type GradedDims = BTreeMap<i64, usize>;

/// Finitely presented graded module `coker(pres: F_1 -> F_0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FpModule<F: Field> {
    pub pres: GradedMap<F>,
}

impl<F: Field> FpModule<F> {
    pub fn new(pres: GradedMap<F>) -> Self {
        FpModule { pres }
    }

    pub fn free(field: &F, nvars: usize, gens: FreeModule) -> Self {
        FpModule { pres: GradedMap::zero(field, nvars, FreeModule::default(), gens) }
    }

    /// `alg / (gens)` as a cyclic module.
    pub fn cyclic(field: &F, nvars: usize, gens: &[Poly<F>]) -> Result<Self> {
        let nz: Vec<Poly<F>> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        Ok(FpModule { pres: GradedMap::row(field, nvars, 0, &nz)? })
    }

    /// The residue field `alg / m`.
    pub fn residue_field(field: &F, nvars: usize) -> Self {
        let vars: Vec<Poly<F>> = (0..nvars).map(|i| Poly::var(field, nvars, i)).collect();
        FpModule { pres: GradedMap::row(field, nvars, 0, &vars).expect("variables are homogeneous") }
    }

    /// An ideal, presented by the second differential of the resolution of
    /// `alg / I`.
    pub fn ideal(alg: &Algebra<F>, gens: &[Poly<F>]) -> Result<Self> {
        let res = resolve_quotient(alg, gens, 2)?;
        let pres = match res.maps.get(1) {
            Some(m) => m.clone(),
            None => GradedMap::zero(alg.field(), alg.nvars(), FreeModule::default(), res.maps[0].source.clone()),
        };
        Ok(FpModule { pres })
    }

    pub fn generators(&self) -> &FreeModule {
        &self.pres.target
    }

    pub fn hilbert(&self, alg: &Algebra<F>) -> Result<GradedDims> {
        let ev = self.pres.eval(alg)?;
        let mut out = BTreeMap::new();
        let Some((lo, hi)) = self.pres.target.degree_range(alg.top()) else { return Ok(out) };
        for d in lo..=hi {
            let total = self.pres.target.dim_at(alg, d);
            let n = total - ev.matrix(d).rank();
            if n > 0 {
                out.insert(d, n);
            }
        }
        Ok(out)
    }

    pub fn resolve(&self, alg: &Algebra<F>, steps: usize) -> Result<Resolution<F>> {
        if self.pres.ncols() == 0 {
            return Ok(Resolution { start: self.pres.target.clone(), maps: vec![self.pres.clone()], valid_degree_bound: i64::MAX });
        }
        resolve_cokernel(alg, &self.pres, steps)
    }
}

fn rowspace<F: Field>(m: Matrix<F>) -> Subspace<F> {
    let f = m.field().clone();
    let n = m.ncols();
    Subspace::from_vectors(&f, n, m.into_rows())
}

/// `{x : x·M ∈ W}` for the row-convention matrix `M`.
pub fn preimage<F: Field>(m: &Matrix<F>, w: &Subspace<F>) -> Subspace<F> {
    let f = m.field();
    let n = m.nrows();
    if m.ncols() == 0 {
        return Subspace::full(f, n);
    }
    let mut rows: Vec<Vec<F::Elem>> = m.rows().to_vec();
    rows.extend(w.basis().iter().cloned());
    let stacked = Matrix::from_rows(f, m.ncols(), rows).expect("consistent widths");
    let ker = stacked.left_kernel();
    Subspace::from_vectors(f, n, ker.basis().iter().map(|v| v[..n].to_vec()).collect())
}

/// One spot `C_next -> C -> C_prev` of a complex of free modules with
/// relation submodules: `rel`, `rel_prev` are given as maps into `C`, `C_prev`.
pub struct Spot<'a, F: Field> {
    pub module: FreeModule,
    pub out: Option<&'a GradedMap<F>>,
    pub inc: Option<&'a GradedMap<F>>,
    pub rel: Option<&'a GradedMap<F>>,
    pub rel_prev: Option<&'a GradedMap<F>>,
}

/// Graded dimensions of `{x : out(x) ∈ rel_prev} / (im inc + rel)`.
pub fn spot_homology<F: Field>(alg: &Algebra<F>, spot: &Spot<'_, F>) -> Result<GradedDims> {
    let f = alg.field();
    let out_ev = spot.out.map(|m| m.eval(alg)).transpose()?;
    let inc_ev = spot.inc.map(|m| m.eval(alg)).transpose()?;
    let rel_ev = spot.rel.map(|m| m.eval(alg)).transpose()?;
    let relp_ev = spot.rel_prev.map(|m| m.eval(alg)).transpose()?;
    let mut dims = BTreeMap::new();
    let Some((lo, hi)) = spot.module.degree_range(alg.top()) else { return Ok(dims) };
    for d in lo..=hi {
        let n = spot.module.dim_at(alg, d);
        if n == 0 {
            continue;
        }
        let cycles = match &out_ev {
            Some(o) => {
                let m = o.matrix(d);
                let w = match &relp_ev {
                    Some(r) => rowspace(r.matrix(d)),
                    None => Subspace::zero(f, m.ncols()),
                };
                preimage(&m, &w)
            }
            None => Subspace::full(f, n),
        };
        let mut bounds = match &inc_ev {
            Some(i) => rowspace(i.matrix(d)),
            None => Subspace::zero(f, n),
        };
        if let Some(r) = &rel_ev {
            bounds = bounds.sum(&rowspace(r.matrix(d)));
        }
        if !bounds.is_subspace_of(&cycles) {
            return Err(Error::Invariant(format!("boundaries are not cycles in degree {d}")));
        }
        let h = cycles.dim() - bounds.dim();
        if h > 0 {
            dims.insert(d, h);
        }
    }
    Ok(dims)
}

/// `Tor_i(M, N)` for `0 <= i <= imax`, computed from a resolution of `M`.
pub fn tor_dims<F: Field>(alg: &Algebra<F>, m: &FpModule<F>, n: &FpModule<F>, imax: usize) -> Result<Vec<GradedDims>> {
    let res = m.resolve(alg, imax + 1)?;
    tor_from_resolution(alg, &res, n, imax)
}

pub fn tor_from_resolution<F: Field>(alg: &Algebra<F>, res: &Resolution<F>, n: &FpModule<F>, imax: usize) -> Result<Vec<GradedDims>> {
    let mods = res.modules();
    let g0 = &n.pres.target;
    let tensored: Vec<GradedMap<F>> = res.maps.iter().map(|d| tensor_left(d, g0)).collect();
    let rels: Vec<GradedMap<F>> = mods.iter().map(|fi| tensor_right(fi, &n.pres)).collect();
    let mut out = Vec::new();
    for i in 0..=imax {
        if i >= mods.len() {
            out.push(BTreeMap::new());
            continue;
        }
        let spot = Spot {
            module: tensor_modules(&mods[i], g0),
            out: if i >= 1 { tensored.get(i - 1) } else { None },
            inc: tensored.get(i),
            rel: rels.get(i),
            rel_prev: if i >= 1 { rels.get(i - 1) } else { None },
        };
        out.push(spot_homology(alg, &spot)?);
    }
    Ok(out)
}

/// `Ext^i(M, R)` for `0 <= i <= imax`, via `Hom(F_•, R)`.
pub fn ext_dims<F: Field>(alg: &Algebra<F>, m: &FpModule<F>, imax: usize) -> Result<Vec<GradedDims>> {
    let res = m.resolve(alg, imax + 1)?;
    ext_from_resolution(alg, &res, imax)
}

pub fn ext_from_resolution<F: Field>(alg: &Algebra<F>, res: &Resolution<F>, imax: usize) -> Result<Vec<GradedDims>> {
    let mods = res.modules();
    let duals: Vec<GradedMap<F>> = res.maps.iter().map(|d| d.dual()).collect();
    let mut out = Vec::new();
    for i in 0..=imax {
        if i >= mods.len() {
            out.push(BTreeMap::new());
            continue;
        }
        let spot = Spot {
            module: mods[i].dual(),
            out: duals.get(i),
            inc: if i >= 1 { duals.get(i - 1) } else { None },
            rel: None,
            rel_prev: None,
        };
        out.push(spot_homology(alg, &spot)?);
    }
    Ok(out)
}

/// Total dimension of each graded table.
pub fn totals(v: &[GradedDims]) -> Vec<usize> {
    v.iter().map(|m| m.values().sum()).collect()
}

/// Outcome of comparing `Ext^i(M,R)_d` with `Tor_i(M,ω)_{s-d}`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatlisCheck {
    pub ext: Vec<GradedDims>,
    pub tor: Vec<GradedDims>,
    pub agree: bool,
}

/// Graded Matlis comparison for a canonical module `ω` whose grading makes
/// `Hom_k(ω, k) ≅ R(shift)`, e.g. `ω = (0 : J) ⊆ S` with `shift` the socle
/// degree of `S`.
pub fn matlis_check<F: Field>(alg: &Algebra<F>, m: &FpModule<F>, omega: &FpModule<F>, shift: i64, imax: usize) -> Result<MatlisCheck> {
    let res = m.resolve(alg, imax + 1)?;
    let ext = ext_from_resolution(alg, &res, imax)?;
    let tor = tor_from_resolution(alg, &res, omega, imax)?;
    let agree = ext.iter().zip(&tor).all(|(e, t)| {
        let mirrored: GradedDims = t.iter().map(|(&d, &n)| (shift - d, n)).collect();
        *e == mirrored
    });
    Ok(MatlisCheck { ext, tor, agree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn ci(p: u32) -> (PrimeField, Algebra<PrimeField>) {
        let f = PrimeField::new(p).unwrap();
        let names = vec!["x".to_string(), "y".to_string()];
        let g = [Poly::var(&f, 2, 0).pow(2), Poly::var(&f, 2, 1).pow(2)];
        let s = Algebra::from_generators(&f, names, &g, 4).unwrap();
        (f, s)
    }

    #[test]
    fn tor_of_residue_fields_is_betti() {
        let (f, s) = ci(11);
        let k = FpModule::residue_field(&f, 2);
        let t = tor_dims(&s, &k, &k, 3).unwrap();
        assert_eq!(totals(&t), vec![1, 2, 3, 4]);
    }

    #[test]
    fn tor_zero_is_tensor_product() {
        let (f, s) = ci(11);
        let x = Poly::var(&f, 2, 0);
        let y = Poly::var(&f, 2, 1);
        let m = FpModule::cyclic(&f, 2, &[x]).unwrap();
        let n = FpModule::cyclic(&f, 2, &[y]).unwrap();
        let t = tor_dims(&s, &m, &n, 0).unwrap();
        assert_eq!(totals(&t), vec![1]);
    }

    #[test]
    fn ext_into_gorenstein_ring_and_matlis() {
        let (f, s) = ci(11);
        let k = FpModule::residue_field(&f, 2);
        let e = ext_dims(&s, &k, 2).unwrap();
        // Ext^i(k, S) vanishes for i > 0 over a Gorenstein ring.
        assert_eq!(totals(&e), vec![1, 0, 0]);
        // S is Gorenstein, so ω = S with shift equal to the socle degree.
        let omega = FpModule::free(&f, 2, FreeModule::new(vec![0]));
        let m = FpModule::cyclic(&f, 2, &[Poly::var(&f, 2, 0)]).unwrap();
        assert!(matlis_check(&s, &m, &omega, 2, 3).unwrap().agree);
    }
}
