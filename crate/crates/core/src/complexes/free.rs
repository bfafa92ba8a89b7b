use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::ring::{Algebra, Poly, RingElem};

/// Graded free module `⊕_j R(-β_j)`; generator `j` sits in degree `twists[j]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeModule {
    pub twists: Vec<i64>,
}

impl FreeModule {
    pub fn new(twists: Vec<i64>) -> Self {
        FreeModule { twists }
    }
    pub fn rank(&self) -> usize {
        self.twists.len()
    }
    pub fn direct_sum(&self, other: &FreeModule) -> FreeModule {
        FreeModule { twists: self.twists.iter().chain(&other.twists).copied().collect() }
    }
    pub fn shifted(&self, by: i64) -> FreeModule {
        FreeModule { twists: self.twists.iter().map(|t| t + by).collect() }
    }
    /// `Hom(F, R)`: generators in the negated degrees.
    pub fn dual(&self) -> FreeModule {
        FreeModule { twists: self.twists.iter().map(|t| -t).collect() }
    }
    /// Degrees where `F ⊗ S` can be nonzero, for `S` of top degree `top`.
    pub fn degree_range(&self, top: usize) -> Option<(i64, i64)> {
        let lo = *self.twists.iter().min()?;
        let hi = *self.twists.iter().max()? + top as i64;
        Some((lo, hi))
    }

    /// Offsets and sizes of the generator blocks of `[F ⊗ S]_d`.
    pub fn layout<F: Field>(&self, alg: &Algebra<F>, d: i64) -> Layout {
        let mut blocks = Vec::with_capacity(self.rank());
        let mut off = 0;
        for &t in &self.twists {
            let dim = alg.dim_i(d - t);
            blocks.push((off, dim));
            off += dim;
        }
        Layout { blocks, total: off }
    }

    pub fn dim_at<F: Field>(&self, alg: &Algebra<F>, d: i64) -> usize {
        self.twists.iter().map(|&t| alg.dim_i(d - t)).sum()
    }
}

#[derive(Clone, Debug)]
pub struct Layout {
    pub blocks: Vec<(usize, usize)>,
    pub total: usize,
}

/// Homogeneous element of `F ⊗ S` in degree `deg`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModElem<F: Field> {
    pub deg: i64,
    pub coords: Vec<F::Elem>,
}

impl<F: Field> ModElem<F> {
    pub fn is_zero(&self, f: &F) -> bool {
        self.coords.iter().all(|c| f.is_zero(c))
    }
}

/// `x_var * v` in `F ⊗ S`.
pub fn module_mul_var<F: Field>(alg: &Algebra<F>, m: &FreeModule, var: usize, d: i64, v: &[F::Elem]) -> Vec<F::Elem> {
    let src = m.layout(alg, d);
    let dst = m.layout(alg, d + 1);
    let mut out = vec![alg.field().zero(); dst.total];
    for (j, &t) in m.twists.iter().enumerate() {
        let (so, sd) = src.blocks[j];
        if sd == 0 {
            continue;
        }
        let (to, td) = dst.blocks[j];
        if td == 0 {
            continue;
        }
        let r = alg.mul_var_coords(var, (d - t) as usize, &v[so..so + sd]);
        out[to..to + td].clone_from_slice(&r);
    }
    out
}

/// `a * v` in `F ⊗ S`.
pub fn module_mul_elem<F: Field>(alg: &Algebra<F>, m: &FreeModule, a: &RingElem<F>, d: i64, v: &[F::Elem]) -> Vec<F::Elem> {
    let e = d + a.deg as i64;
    let src = m.layout(alg, d);
    let dst = m.layout(alg, e);
    let mut out = vec![alg.field().zero(); dst.total];
    for (j, &t) in m.twists.iter().enumerate() {
        let (so, sd) = src.blocks[j];
        let (to, td) = dst.blocks[j];
        if sd == 0 || td == 0 {
            continue;
        }
        let r = alg.mul_coords(a, (d - t) as usize, &v[so..so + sd]);
        out[to..to + td].clone_from_slice(&r);
    }
    out
}

/// Degree-preserving map of graded free modules, given by homogeneous
/// polynomial entries; `entries[i][j]` is the coefficient of target
/// generator `i` in the image of source generator `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedMap<F: Field> {
    pub field: F,
    pub nvars: usize,
    pub source: FreeModule,
    pub target: FreeModule,
    pub entries: Vec<Vec<Poly<F>>>,
}

impl<F: Field> GradedMap<F> {
    pub fn zero(field: &F, nvars: usize, source: FreeModule, target: FreeModule) -> Self {
        let entries = vec![vec![Poly::zero(field, nvars); source.rank()]; target.rank()];
        GradedMap { field: field.clone(), nvars, source, target, entries }
    }

    pub fn new(field: &F, nvars: usize, source: FreeModule, target: FreeModule, entries: Vec<Vec<Poly<F>>>) -> Result<Self> {
        let m = GradedMap { field: field.clone(), nvars, source, target, entries };
        m.validate()?;
        Ok(m)
    }

    /// Map `R^m -> R` given by a row of homogeneous generators; the source
    /// twists are the generator degrees plus `target_twist`.
    pub fn row(field: &F, nvars: usize, target_twist: i64, gens: &[Poly<F>]) -> Result<Self> {
        let twists = gens.iter().map(|g| g.degree().unwrap_or(0) as i64 + target_twist).collect();
        Self::new(field, nvars, FreeModule::new(twists), FreeModule::new(vec![target_twist]), vec![gens.to_vec()])
    }

    pub fn validate(&self) -> Result<()> {
        if self.entries.len() != self.target.rank() || self.entries.iter().any(|r| r.len() != self.source.rank()) {
            return Err(Error::Dimension("entry matrix does not match module ranks".into()));
        }
        for (i, row) in self.entries.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                let want = self.source.twists[j] - self.target.twists[i];
                if !p.is_homogeneous() || p.degree().unwrap() as i64 != want {
                    return Err(Error::Invariant(format!(
                        "entry ({i},{j}) is not homogeneous of degree {want}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn nrows(&self) -> usize {
        self.target.rank()
    }
    pub fn ncols(&self) -> usize {
        self.source.rank()
    }
    pub fn entry(&self, i: usize, j: usize) -> &Poly<F> {
        &self.entries[i][j]
    }
    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|p| p.is_zero())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMap<F>) -> Result<GradedMap<F>> {
        if other.target != self.source {
            return Err(Error::Dimension("composing maps with mismatched modules".into()));
        }
        let (f, n) = (self.field.clone(), self.nvars);
        let mut out = GradedMap::zero(&f, n, other.source.clone(), self.target.clone());
        for i in 0..self.nrows() {
            for j in 0..other.ncols() {
                let mut acc = Poly::zero(&f, n);
                for k in 0..self.ncols() {
                    if self.entries[i][k].is_zero() || other.entries[k][j].is_zero() {
                        continue;
                    }
                    acc = acc.add(&self.entries[i][k].mul(&other.entries[k][j]));
                }
                out.entries[i][j] = acc;
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> GradedMap<F> {
        GradedMap {
            field: self.field.clone(),
            nvars: self.nvars,
            source: self.source.clone(),
            target: self.target.clone(),
            entries: self.entries.iter().map(|r| r.iter().map(|p| p.neg()).collect()).collect(),
        }
    }

    pub fn sub(&self, other: &GradedMap<F>) -> Result<GradedMap<F>> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Dimension("subtracting maps between different modules".into()));
        }
        Ok(GradedMap {
            field: self.field.clone(),
            nvars: self.nvars,
            source: self.source.clone(),
            target: self.target.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.sub(y)).collect())
                .collect(),
        })
    }

    /// Transposed matrix, read as `Hom(G, R) -> Hom(F, R)`.
    pub fn dual(&self) -> GradedMap<F> {
        let entries = (0..self.ncols()).map(|j| (0..self.nrows()).map(|i| self.entries[i][j].clone()).collect()).collect();
        GradedMap { field: self.field.clone(), nvars: self.nvars, source: self.target.dual(), target: self.source.dual(), entries }
    }

    /// `[self | other]` on `F ⊕ F'`.
    pub fn hstack(&self, other: &GradedMap<F>) -> Result<GradedMap<F>> {
        if self.target != other.target {
            return Err(Error::Dimension("hstack with different targets".into()));
        }
        Ok(GradedMap {
            field: self.field.clone(),
            nvars: self.nvars,
            source: self.source.direct_sum(&other.source),
            target: self.target.clone(),
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.iter().chain(b).cloned().collect()).collect(),
        })
    }

    /// `[self ; other]` into `G ⊕ G'`.
    pub fn vstack(&self, other: &GradedMap<F>) -> Result<GradedMap<F>> {
        if self.source != other.source {
            return Err(Error::Dimension("vstack with different sources".into()));
        }
        Ok(GradedMap {
            field: self.field.clone(),
            nvars: self.nvars,
            source: self.source.clone(),
            target: self.target.direct_sum(&other.target),
            entries: self.entries.iter().chain(&other.entries).cloned().collect(),
        })
    }

    /// Columns selected by index.
    pub fn columns(&self, cols: &[usize]) -> GradedMap<F> {
        GradedMap {
            field: self.field.clone(),
            nvars: self.nvars,
            source: FreeModule::new(cols.iter().map(|&j| self.source.twists[j]).collect()),
            target: self.target.clone(),
            entries: self.entries.iter().map(|r| cols.iter().map(|&j| r[j].clone()).collect()).collect(),
        }
    }

    /// The image of source generator `j`, as an element of `G ⊗ S`.
    pub fn column_elem(&self, alg: &Algebra<F>, j: usize) -> Result<ModElem<F>> {
        let d = self.source.twists[j];
        let col: Vec<Poly<F>> = self.entries.iter().map(|r| r[j].clone()).collect();
        polys_to_elem(alg, &self.target, d, &col)
    }

    pub fn eval<'a>(&'a self, alg: &'a Algebra<F>) -> Result<EvalMap<'a, F>> {
        let mut reduced = Vec::with_capacity(self.nrows());
        for (i, row) in self.entries.iter().enumerate() {
            let mut r = Vec::with_capacity(row.len());
            for (j, p) in row.iter().enumerate() {
                let e = self.source.twists[j] - self.target.twists[i];
                if p.is_zero() || e < 0 || e as usize > alg.top() {
                    r.push(None);
                    continue;
                }
                let x = alg.reduce_in_degree(p, e as usize)?;
                r.push(if x.is_zero(alg.field()) { None } else { Some(x) });
            }
            reduced.push(r);
        }
        Ok(EvalMap { alg, map: self, reduced })
    }
}

/// Column of polynomials to an element of `G ⊗ S` in degree `d`.
pub fn polys_to_elem<F: Field>(alg: &Algebra<F>, g: &FreeModule, d: i64, col: &[Poly<F>]) -> Result<ModElem<F>> {
    let lay = g.layout(alg, d);
    let mut coords = vec![alg.field().zero(); lay.total];
    for (i, p) in col.iter().enumerate() {
        let (o, n) = lay.blocks[i];
        if n == 0 || p.is_zero() {
            continue;
        }
        let e = alg.reduce_in_degree(p, (d - g.twists[i]) as usize)?;
        coords[o..o + n].clone_from_slice(&e.coords);
    }
    Ok(ModElem { deg: d, coords })
}

/// Standard-monomial lift of an element of `G ⊗ S` to a column of polynomials.
pub fn elem_to_polys<F: Field>(alg: &Algebra<F>, g: &FreeModule, v: &ModElem<F>) -> Vec<Poly<F>> {
    let lay = g.layout(alg, v.deg);
    g.twists
        .iter()
        .enumerate()
        .map(|(i, &t)| {
            let (o, n) = lay.blocks[i];
            if n == 0 {
                Poly::zero(alg.field(), alg.nvars())
            } else {
                alg.lift_coords((v.deg - t) as usize, &v.coords[o..o + n])
            }
        })
        .collect()
}

/// A graded map whose entries have been reduced into a particular algebra.
pub struct EvalMap<'a, F: Field> {
    pub alg: &'a Algebra<F>,
    pub map: &'a GradedMap<F>,
    reduced: Vec<Vec<Option<RingElem<F>>>>,
}

impl<F: Field> EvalMap<'_, F> {
    pub fn apply(&self, d: i64, v: &[F::Elem]) -> Vec<F::Elem> {
        let alg = self.alg;
        let src = self.map.source.layout(alg, d);
        let dst = self.map.target.layout(alg, d);
        let mut out = vec![alg.field().zero(); dst.total];
        let f = alg.field();
        for (j, &t) in self.map.source.twists.iter().enumerate() {
            let (so, sd) = src.blocks[j];
            if sd == 0 {
                continue;
            }
            let block = &v[so..so + sd];
            if block.iter().all(|c| f.is_zero(c)) {
                continue;
            }
            for i in 0..self.map.nrows() {
                let Some(r) = &self.reduced[i][j] else { continue };
                let (to, td) = dst.blocks[i];
                if td == 0 {
                    continue;
                }
                let prod = alg.mul_coords(r, (d - t) as usize, block);
                for (o, p) in out[to..to + td].iter_mut().zip(prod) {
                    *o = f.add(o, &p);
                }
            }
        }
        out
    }

    /// Rows are images of the basis of `[F ⊗ S]_d`.
    pub fn matrix(&self, d: i64) -> Matrix<F> {
        let alg = self.alg;
        let f = alg.field();
        let src = self.map.source.layout(alg, d);
        let dst = self.map.target.layout(alg, d);
        let mut m = Matrix::zeros(f, src.total, dst.total);
        for (j, &t) in self.map.source.twists.iter().enumerate() {
            let (so, sd) = src.blocks[j];
            for b in 0..sd {
                for i in 0..self.map.nrows() {
                    let Some(r) = &self.reduced[i][j] else { continue };
                    let (to, td) = dst.blocks[i];
                    if td == 0 {
                        continue;
                    }
                    let prod = alg.mul_basis(r, (d - t) as usize, b);
                    for (k, p) in prod.into_iter().enumerate() {
                        if !f.is_zero(&p) {
                            let v = f.add(m.get(so + b, to + k), &p);
                            m.set(so + b, to + k, v);
                        }
                    }
                }
            }
        }
        m
    }
}
