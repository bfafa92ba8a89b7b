use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::field::Field;
use crate::ring::Algebra;

use super::free::{FreeModule, GradedMap};
use super::homology::{FpModule, GradedDims};
use super::resolution::generator_map;
use super::submodule::Submodule;

/// Minimal presentation of `ker(map)`, computed from the kernel itself so the
/// map need not be minimal.
pub fn kernel_module<F: Field>(alg: &Algebra<F>, map: &GradedMap<F>) -> Result<FpModule<F>> {
    let ker = Submodule::kernel(alg, map)?;
    let bound = ker.valid_through();
    let gens = generator_map(alg, &ker, bound)?;
    let rel = Submodule::kernel(alg, &gens)?;
    let pres = generator_map(alg, &rel, bound.min(rel.valid_through()))?;
    Ok(FpModule::new(pres))
}

/// Free summands of `coker φ`, by twist. A summand `R(-β)` exists exactly when
/// some homomorphism to `R` sends a degree-`β` generator to a unit, so the
/// count is the rank of the constant parts of `ker φ^T` in degree `-β`.
pub fn free_summands<F: Field>(alg: &Algebra<F>, m: &FpModule<F>) -> Result<BTreeMap<i64, usize>> {
    let gens = &m.pres.target;
    let dual = m.pres.dual();
    let ev = dual.eval(alg)?;
    let mut out = BTreeMap::new();
    let mut twists: Vec<i64> = gens.twists.clone();
    twists.sort();
    twists.dedup();
    for beta in twists {
        let d = -beta;
        let lay = gens.dual().layout(alg, d);
        let m_d = ev.matrix(d);
        let ker = if m_d.ncols() == 0 {
            crate::linalg::Subspace::full(alg.field(), lay.total)
        } else {
            m_d.left_kernel()
        };
        let positions: Vec<usize> =
            gens.twists.iter().enumerate().filter(|(_, &t)| t == beta).map(|(j, _)| lay.blocks[j].0).collect();
        let proj: Vec<Vec<F::Elem>> = ker.basis().iter().map(|v| positions.iter().map(|&p| v[p].clone()).collect()).collect();
        let r = crate::linalg::Matrix::from_rows(alg.field(), positions.len(), proj)?.rank();
        if r > 0 {
            out.insert(beta, r);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CoreSummary {
    pub generators: usize,
    pub free_rank: usize,
    pub core_generators: usize,
    pub core_hilbert: GradedDims,
}

/// Hilbert function and generator count after removing free summands.
pub fn strip_free<F: Field>(alg: &Algebra<F>, m: &FpModule<F>) -> Result<CoreSummary> {
    let free = free_summands(alg, m)?;
    let mut hf = m.hilbert(alg)?;
    for (&beta, &r) in &free {
        for d in 0..=alg.top() {
            let e = beta + d as i64;
            let n = alg.dim(d) * r;
            if n == 0 {
                continue;
            }
            let slot = hf.entry(e).or_insert(0);
            *slot -= n;
            if *slot == 0 {
                hf.remove(&e);
            }
        }
    }
    let free_rank: usize = free.values().sum();
    Ok(CoreSummary {
        generators: m.pres.target.rank(),
        free_rank,
        core_generators: m.pres.target.rank() - free_rank,
        core_hilbert: hf,
    })
}

/// Second syzygy of `M`: the kernel of the first map of a resolution.
pub fn syz2<F: Field>(alg: &Algebra<F>, m: &FpModule<F>) -> Result<FpModule<F>> {
    if m.pres.ncols() == 0 {
        return Ok(FpModule::free(alg.field(), alg.nvars(), FreeModule::default()));
    }
    let img = Submodule::image(alg, &m.pres)?;
    let d1 = generator_map(alg, &img, img.valid_through())?;
    kernel_module(alg, &d1)
}

/// Same, but from the presentation with an extra zero column appended, which
/// makes the resolution non-minimal and adds a free summand.
pub fn syz2_padded<F: Field>(alg: &Algebra<F>, m: &FpModule<F>, pad_twist: i64) -> Result<FpModule<F>> {
    let img = Submodule::image(alg, &m.pres)?;
    let d1 = generator_map(alg, &img, img.valid_through())?;
    let zero = GradedMap::zero(alg.field(), alg.nvars(), FreeModule::new(vec![pad_twist]), d1.target.clone());
    kernel_module(alg, &d1.hstack(&zero)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::ring::Poly;

    #[test]
    fn residue_field_second_syzygy() {
        let f = PrimeField::new(13).unwrap();
        let names = vec!["x".to_string(), "y".to_string()];
        let g = [Poly::var(&f, 2, 0).pow(2), Poly::var(&f, 2, 1).pow(2)];
        let s = Algebra::from_generators(&f, names, &g, 4).unwrap();
        let k = FpModule::residue_field(&f, 2);
        let z = syz2(&s, &k).unwrap();
        assert_eq!(z.pres.target.rank(), 3);
        let core = strip_free(&s, &z).unwrap();
        assert_eq!(core.free_rank, 0);
        let padded = syz2_padded(&s, &k, 1).unwrap();
        let pc = strip_free(&s, &padded).unwrap();
        assert_eq!(pc.free_rank, 1);
        assert_eq!(pc.core_hilbert, core.core_hilbert);
        assert_eq!(pc.core_generators, core.core_generators);
    }
}
