use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Subspace;
use crate::ring::{Algebra, RingElem};

use super::free::{module_mul_elem, module_mul_var, FreeModule, GradedMap, ModElem};

/// Graded submodule of `F ⊗ S`, one subspace per degree of the range where
/// `F ⊗ S` can be nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct Submodule<F: Field> {
    pub module: FreeModule,
    host: u64,
    lo: i64,
    pieces: Vec<Subspace<F>>,
    valid_through: i64,
}

fn valid_bound<F: Field>(alg: &Algebra<F>, modules: &[&FreeModule]) -> i64 {
    if !alg.is_truncated() {
        return i64::MAX;
    }
    let m = modules.iter().flat_map(|f| f.twists.iter()).min().copied().unwrap_or(0);
    alg.top() as i64 + m
}

impl<F: Field> Submodule<F> {
    fn empty_like(alg: &Algebra<F>, m: &FreeModule, full: bool) -> Self {
        let f = alg.field();
        let (lo, hi) = m.degree_range(alg.top()).unwrap_or((0, -1));
        let pieces = (lo..=hi)
            .map(|d| {
                let n = m.dim_at(alg, d);
                if full {
                    Subspace::full(f, n)
                } else {
                    Subspace::zero(f, n)
                }
            })
            .collect();
        Submodule { module: m.clone(), host: alg.id(), lo, pieces, valid_through: valid_bound(alg, &[m]) }
    }

    pub fn zero(alg: &Algebra<F>, m: &FreeModule) -> Self {
        Self::empty_like(alg, m, false)
    }

    pub fn full(alg: &Algebra<F>, m: &FreeModule) -> Self {
        Self::empty_like(alg, m, true)
    }

    fn check(&self, alg: &Algebra<F>) -> Result<()> {
        if alg.id() != self.host {
            return Err(Error::HostMismatch);
        }
        Ok(())
    }

    pub fn generated(alg: &Algebra<F>, m: &FreeModule, gens: &[ModElem<F>]) -> Result<Self> {
        let mut out = Self::zero(alg, m);
        for g in gens {
            if g.coords.len() != m.dim_at(alg, g.deg) {
                return Err(Error::Dimension("generator does not live in the module".into()));
            }
        }
        let n = alg.nvars();
        for idx in 0..out.pieces.len() {
            let d = out.lo + idx as i64;
            let (before, rest) = out.pieces.split_at_mut(idx);
            let sp = &mut rest[0];
            for g in gens.iter().filter(|g| g.deg == d) {
                sp.insert(&g.coords);
            }
            if idx > 0 {
                'outer: for row in before[idx - 1].basis() {
                    for i in 0..n {
                        if sp.is_full() {
                            break 'outer;
                        }
                        sp.insert(&module_mul_var(alg, m, i, d - 1, row));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn image(alg: &Algebra<F>, map: &GradedMap<F>) -> Result<Self> {
        let gens = (0..map.ncols()).map(|j| map.column_elem(alg, j)).collect::<Result<Vec<_>>>()?;
        let mut out = Self::generated(alg, &map.target, &gens)?;
        out.valid_through = valid_bound(alg, &[&map.source, &map.target]);
        Ok(out)
    }

    pub fn kernel(alg: &Algebra<F>, map: &GradedMap<F>) -> Result<Self> {
        let ev = map.eval(alg)?;
        let mut out = Self::zero(alg, &map.source);
        for (idx, sp) in out.pieces.iter_mut().enumerate() {
            let d = out.lo + idx as i64;
            if sp.ambient() == 0 {
                continue;
            }
            *sp = ev.matrix(d).left_kernel();
        }
        out.valid_through = valid_bound(alg, &[&map.source, &map.target]);
        Ok(out)
    }

    pub fn host(&self) -> u64 {
        self.host
    }
    pub fn valid_through(&self) -> i64 {
        self.valid_through
    }
    pub fn range(&self) -> (i64, i64) {
        (self.lo, self.lo + self.pieces.len() as i64 - 1)
    }

    pub fn piece(&self, d: i64) -> Option<&Subspace<F>> {
        if d < self.lo {
            return None;
        }
        self.pieces.get((d - self.lo) as usize)
    }

    pub fn dim_at(&self, d: i64) -> usize {
        self.piece(d).map_or(0, |p| p.dim())
    }

    /// Nonzero graded dimensions.
    pub fn hilbert(&self) -> BTreeMap<i64, usize> {
        self.pieces
            .iter()
            .enumerate()
            .filter(|(_, p)| p.dim() > 0)
            .map(|(i, p)| (self.lo + i as i64, p.dim()))
            .collect()
    }

    pub fn total_dim(&self) -> usize {
        self.pieces.iter().map(|p| p.dim()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.iter().all(|p| p.is_zero())
    }

    pub fn contains(&self, v: &ModElem<F>) -> bool {
        match self.piece(v.deg) {
            Some(p) => p.contains(&v.coords),
            None => v.coords.is_empty(),
        }
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&Subspace<F>, &Subspace<F>) -> Subspace<F>) -> Result<Self> {
        if self.module != other.module || self.host != other.host {
            return Err(Error::Dimension("submodules of different modules".into()));
        }
        Ok(Submodule {
            module: self.module.clone(),
            host: self.host,
            lo: self.lo,
            pieces: self.pieces.iter().zip(&other.pieces).map(|(a, b)| op(a, b)).collect(),
            valid_through: self.valid_through.min(other.valid_through),
        })
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.sum(b))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.intersection(b))
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.pieces.iter().zip(&other.pieces).all(|(a, b)| a.is_subspace_of(b))
    }

    /// Equality through the degrees where both are trustworthy.
    pub fn same_as(&self, other: &Self) -> bool {
        let t = self.valid_through.min(other.valid_through);
        self.module == other.module
            && self
                .pieces
                .iter()
                .zip(&other.pieces)
                .enumerate()
                .filter(|(i, _)| self.lo + (*i as i64) <= t)
                .all(|(_, (a, b))| a == b)
    }

    /// Minimal homogeneous generators, canonical order.
    pub fn mingens(&self, alg: &Algebra<F>) -> Result<Vec<ModElem<F>>> {
        self.mingens_after(alg, &[])
    }

    /// Minimal generators that begin with `first` (which must be minimal and
    /// independent modulo `m N`).
    pub fn mingens_after(&self, alg: &Algebra<F>, first: &[ModElem<F>]) -> Result<Vec<ModElem<F>>> {
        self.check(alg)?;
        let f = alg.field();
        let mut out: Vec<ModElem<F>> = first.to_vec();
        for (idx, sp) in self.pieces.iter().enumerate() {
            let d = self.lo + idx as i64;
            let mut lower = Subspace::zero(f, sp.ambient());
            if idx > 0 {
                'outer: for row in self.pieces[idx - 1].basis() {
                    for i in 0..alg.nvars() {
                        if lower.dim() == sp.dim() {
                            break 'outer;
                        }
                        lower.insert(&module_mul_var(alg, &self.module, i, d - 1, row));
                    }
                }
            }
            for g in first.iter().filter(|g| g.deg == d) {
                if !lower.insert(&g.coords) {
                    return Err(Error::Invariant("prescribed generator is not minimal".into()));
                }
            }
            for v in sp.complement_in(&lower) {
                out.push(ModElem { deg: d, coords: v });
            }
        }
        Ok(out)
    }

    /// `I · N` for the ideal generated by `gens`.
    pub fn times_ideal(&self, alg: &Algebra<F>, gens: &[RingElem<F>]) -> Result<Self> {
        let ng = self.mingens(alg)?;
        let mut prods = Vec::new();
        for g in gens {
            for v in &ng {
                let e = v.deg + g.deg as i64;
                if self.piece(e).is_none() {
                    continue;
                }
                prods.push(ModElem { deg: e, coords: module_mul_elem(alg, &self.module, g, v.deg, &v.coords) });
            }
        }
        Self::generated(alg, &self.module, &prods)
    }

    /// `m^k · N`.
    pub fn times_maximal_power(&self, alg: &Algebra<F>, k: usize) -> Result<Self> {
        let mut cur = self.clone();
        for _ in 0..k {
            let gens: Vec<RingElem<F>> = (0..alg.nvars()).map(|i| alg.var(i)).collect();
            cur = cur.times_ideal(alg, &gens)?;
        }
        Ok(cur)
    }
}

/// Every element of `N` lies in the full module, with this dimension.
pub fn module_hilbert<F: Field>(alg: &Algebra<F>, m: &FreeModule) -> BTreeMap<i64, usize> {
    let Some((lo, hi)) = m.degree_range(alg.top()) else { return BTreeMap::new() };
    (lo..=hi).map(|d| (d, m.dim_at(alg, d))).filter(|(_, n)| *n > 0).collect()
}
