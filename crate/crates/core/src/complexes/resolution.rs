use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ring::{Algebra, Poly};

use super::free::{elem_to_polys, FreeModule, GradedMap};
use super::submodule::Submodule;

/// Minimal graded free resolution `F_0 <- F_1 <- F_2 <- ...`; `maps[i]` is
/// the differential `F_{i+1} -> F_i`.
#[derive(Clone, Debug)]
pub struct Resolution<F: Field> {
    pub start: FreeModule,
    pub maps: Vec<GradedMap<F>>,
    /// Internal degrees through which every step is exact and minimal.
    pub valid_degree_bound: i64,
}

/// One Betti number: rank of the summand `R(twist)` in homological degree `hom`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiEntry {
    pub hom: usize,
    pub twist: i64,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    /// `(hom, generator degree) -> rank`.
    pub ranks: BTreeMap<(usize, i64), usize>,
    pub length: usize,
}

impl BettiTable {
    pub fn from_modules(mods: &[FreeModule]) -> Self {
        let mut ranks = BTreeMap::new();
        for (i, m) in mods.iter().enumerate() {
            for &t in &m.twists {
                *ranks.entry((i, t)).or_insert(0) += 1;
            }
        }
        BettiTable { ranks, length: mods.len() }
    }

    pub fn total(&self, i: usize) -> usize {
        self.ranks.iter().filter(|((h, _), _)| *h == i).map(|(_, r)| r).sum()
    }

    pub fn totals(&self) -> Vec<usize> {
        (0..self.length).map(|i| self.total(i)).collect()
    }

    /// Entries with twists written as in `R(-3)^5`, i.e. negated degrees.
    pub fn entries(&self) -> Vec<BettiEntry> {
        self.ranks.iter().map(|(&(hom, d), &rank)| BettiEntry { hom, twist: -d, rank }).collect()
    }

    /// Aligned text table; row `j` lists generators of degree `i + j` in column `i`.
    pub fn to_text(&self) -> String {
        let rows: Vec<i64> = {
            let mut r: Vec<i64> = self.ranks.keys().map(|&(h, d)| d - h as i64).collect();
            r.sort();
            r.dedup();
            r
        };
        let width = self
            .ranks
            .values()
            .chain(self.totals().iter())
            .map(|r| r.to_string().len())
            .max()
            .unwrap_or(1)
            .max(self.length.to_string().len());
        let mut out = String::new();
        let _ = write!(out, "{:>7}", "");
        for i in 0..self.length {
            let _ = write!(out, " {i:>width$}");
        }
        out.push('\n');
        let _ = write!(out, "{:>7}", "total:");
        for t in self.totals() {
            let _ = write!(out, " {t:>width$}");
        }
        out.push('\n');
        for j in rows {
            let _ = write!(out, "{:>7}", format!("{j}:"));
            for i in 0..self.length {
                match self.ranks.get(&(i, i as i64 + j)) {
                    Some(r) => {
                        let _ = write!(out, " {r:>width$}");
                    }
                    None => {
                        let _ = write!(out, " {:>width$}", ".");
                    }
                }
            }
            out.push('\n');
        }
        out
    }
}

impl<F: Field> Resolution<F> {
    pub fn modules(&self) -> Vec<FreeModule> {
        let mut v = vec![self.start.clone()];
        v.extend(self.maps.iter().map(|m| m.source.clone()));
        while v.len() > 1 && v.last().is_some_and(|m| m.rank() == 0) {
            v.pop();
        }
        v
    }

    pub fn betti(&self) -> BettiTable {
        BettiTable::from_modules(&self.modules())
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.modules().iter().map(|m| m.rank()).collect()
    }

    /// `d_i ∘ d_{i+1} = 0` after reduction in `alg`.
    pub fn composites_vanish(&self, alg: &Algebra<F>) -> Result<bool> {
        for w in self.maps.windows(2) {
            let c = w[0].compose(&w[1])?;
            if !map_vanishes(alg, &c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// No entry of any differential has a nonzero constant part.
    pub fn is_minimal(&self, alg: &Algebra<F>) -> Result<bool> {
        for m in &self.maps {
            if !map_is_minimal(alg, m)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Every entry of `m` is zero in `alg`.
pub fn map_vanishes<F: Field>(alg: &Algebra<F>, m: &GradedMap<F>) -> Result<bool> {
    for row in &m.entries {
        for p in row {
            if p.is_zero() {
                continue;
            }
            let d = p.degree().unwrap();
            if d > alg.top() {
                continue;
            }
            if !alg.reduce_in_degree(p, d)?.is_zero(alg.field()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn map_is_minimal<F: Field>(alg: &Algebra<F>, m: &GradedMap<F>) -> Result<bool> {
    for row in &m.entries {
        for p in row {
            if !p.is_zero() && p.degree() == Some(0) && !alg.reduce_in_degree(p, 0)?.is_zero(alg.field()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Minimal generators of `sub`, returned as a map from a new free module.
/// Generators above `bound` are discarded (they are truncation artefacts).
pub fn generator_map<F: Field>(alg: &Algebra<F>, sub: &Submodule<F>, bound: i64) -> Result<GradedMap<F>> {
    let gens: Vec<_> = sub.mingens(alg)?.into_iter().filter(|g| g.deg <= bound).collect();
    let twists = gens.iter().map(|g| g.deg).collect();
    let cols: Vec<Vec<Poly<F>>> = gens.iter().map(|g| elem_to_polys(alg, &sub.module, g)).collect();
    let rows = (0..sub.module.rank()).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    GradedMap::new(alg.field(), alg.nvars(), FreeModule::new(twists), sub.module.clone(), rows)
}

/// Extend a minimal map `d_1: F_1 -> F_0` (a presentation of `coker d_1`) to
/// `steps` differentials.
pub fn resolve_from<F: Field>(alg: &Algebra<F>, first: GradedMap<F>, steps: usize) -> Result<Resolution<F>> {
    if !map_is_minimal(alg, &first)? {
        return Err(Error::Hypothesis("presentation has a unit entry".into()));
    }
    let start = first.target.clone();
    let mut bound = if alg.is_truncated() { alg.top() as i64 + start.twists.iter().min().copied().unwrap_or(0) } else { i64::MAX };
    let mut maps = vec![first];
    while maps.len() < steps {
        let last = maps.last().unwrap();
        if last.source.rank() == 0 {
            break;
        }
        let ker = Submodule::kernel(alg, last)?;
        bound = bound.min(ker.valid_through());
        let next = generator_map(alg, &ker, bound)?;
        maps.push(next);
    }
    Ok(Resolution { start, maps, valid_degree_bound: bound })
}

/// Resolution of `alg / (gens)`; the first differential is the row of minimal
/// generators of the ideal.
pub fn resolve_quotient<F: Field>(alg: &Algebra<F>, gens: &[Poly<F>], steps: usize) -> Result<Resolution<F>> {
    let f0 = FreeModule::new(vec![0]);
    let mut elems = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        elems.push(super::free::polys_to_elem(alg, &f0, g.degree().unwrap() as i64, std::slice::from_ref(g))?);
    }
    let sub = Submodule::generated(alg, &f0, &elems)?;
    let bound = if alg.is_truncated() { alg.top() as i64 } else { i64::MAX };
    let first = generator_map(alg, &sub, bound)?;
    resolve_from(alg, first, steps)
}

/// Resolution of the cokernel of an arbitrary map: the presentation is first
/// replaced by the minimal generators of its image.
pub fn resolve_cokernel<F: Field>(alg: &Algebra<F>, pres: &GradedMap<F>, steps: usize) -> Result<Resolution<F>> {
    let img = Submodule::image(alg, pres)?;
    let bound = if alg.is_truncated() { img.valid_through() } else { i64::MAX };
    let first = generator_map(alg, &img, bound)?;
    resolve_from(alg, first, steps)
}

/// Sorted `k`-subsets of `0..n`, in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Koszul complex on homogeneous `gens`: `maps[i]` is `Λ^{i+1} -> Λ^i` with
/// `d(e_S) = Σ_t (-1)^t f_{S_t} e_{S \ S_t}`.
pub fn koszul<F: Field>(field: &F, nvars: usize, gens: &[Poly<F>]) -> Result<Vec<GradedMap<F>>> {
    let c = gens.len();
    let deg = |s: &[usize]| s.iter().map(|&j| gens[j].degree().unwrap_or(0) as i64).sum::<i64>();
    let mut maps = Vec::new();
    for i in 1..=c {
        let src = subsets(c, i);
        let tgt = subsets(c, i - 1);
        let index: BTreeMap<&Vec<usize>, usize> = tgt.iter().enumerate().map(|(k, s)| (s, k)).collect();
        let mut m = GradedMap::zero(
            field,
            nvars,
            FreeModule::new(src.iter().map(|s| deg(s)).collect()),
            FreeModule::new(tgt.iter().map(|s| deg(s)).collect()),
        );
        for (col, s) in src.iter().enumerate() {
            for t in 0..s.len() {
                let mut rest = s.clone();
                let j = rest.remove(t);
                let row = index[&rest];
                let g = if t % 2 == 0 { gens[j].clone() } else { gens[j].neg() };
                m.entries[row][col] = g;
            }
        }
        m.validate()?;
        maps.push(m);
    }
    Ok(maps)
}

/// `f ⊗ id_G` on `F ⊗ G` with generator `(a, j)` at position `a * rank G + j`.
pub fn tensor_left<F: Field>(f: &GradedMap<F>, g: &FreeModule) -> GradedMap<F> {
    let src = tensor_modules(&f.source, g);
    let tgt = tensor_modules(&f.target, g);
    let mut out = GradedMap::zero(&f.field, f.nvars, src, tgt);
    let n = g.rank();
    for (a, row) in f.entries.iter().enumerate() {
        for (b, p) in row.iter().enumerate() {
            for j in 0..n {
                out.entries[a * n + j][b * n + j] = p.clone();
            }
        }
    }
    out
}

/// `id_F ⊗ g` on `F ⊗ G`.
pub fn tensor_right<F: Field>(f: &FreeModule, g: &GradedMap<F>) -> GradedMap<F> {
    let src = tensor_modules(f, &g.source);
    let tgt = tensor_modules(f, &g.target);
    let mut out = GradedMap::zero(&g.field, g.nvars, src, tgt);
    let (ns, nt) = (g.source.rank(), g.target.rank());
    for a in 0..f.rank() {
        for (i, row) in g.entries.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                out.entries[a * nt + i][a * ns + j] = p.clone();
            }
        }
    }
    out
}

pub fn tensor_modules(f: &FreeModule, g: &FreeModule) -> FreeModule {
    FreeModule::new(f.twists.iter().flat_map(|a| g.twists.iter().map(move |b| a + b)).collect())
}

/// A complex given by its modules `C_0, C_1, ...` and differentials
/// `C_{i+1} -> C_i`.
#[derive(Clone, Debug)]
pub struct Complex<F: Field> {
    pub modules: Vec<FreeModule>,
    pub maps: Vec<GradedMap<F>>,
}

impl<F: Field> Complex<F> {
    pub fn from_maps(start: FreeModule, maps: Vec<GradedMap<F>>) -> Self {
        let mut modules = vec![start];
        modules.extend(maps.iter().map(|m| m.source.clone()));
        Complex { modules, maps }
    }

    pub fn from_resolution(res: &Resolution<F>) -> Self {
        Self::from_maps(res.start.clone(), res.maps.clone())
    }

    pub fn module(&self, i: usize) -> FreeModule {
        self.modules.get(i).cloned().unwrap_or_default()
    }
}

impl Default for FreeModule {
    fn default() -> Self {
        FreeModule::new(Vec::new())
    }
}

/// Total complex of `C ⊗ D`. In homological degree `n` the blocks
/// `C_p ⊗ D_{n-p}` are ordered by `p` descending, and
/// `d(x ⊗ y) = dx ⊗ y + (-1)^p x ⊗ dy`.
pub fn tensor_complexes<F: Field>(field: &F, nvars: usize, c: &Complex<F>, d: &Complex<F>) -> Result<Complex<F>> {
    let top = c.modules.len() + d.modules.len() - 2;
    let blocks = |n: usize| -> Vec<(usize, usize)> {
        (0..=n).rev().filter(|&p| p < c.modules.len() && n - p < d.modules.len()).map(|p| (p, n - p)).collect()
    };
    let total = |n: usize| -> FreeModule {
        let mut tw = Vec::new();
        for (p, q) in blocks(n) {
            tw.extend(tensor_modules(&c.modules[p], &d.modules[q]).twists);
        }
        FreeModule::new(tw)
    };
    let modules: Vec<FreeModule> = (0..=top).map(total).collect();
    let mut maps = Vec::new();
    for n in 1..=top {
        let src_blocks = blocks(n);
        let tgt_blocks = blocks(n - 1);
        let offsets = |bl: &[(usize, usize)]| -> BTreeMap<(usize, usize), usize> {
            let mut off = 0;
            let mut m = BTreeMap::new();
            for &(p, q) in bl {
                m.insert((p, q), off);
                off += c.modules[p].rank() * d.modules[q].rank();
            }
            m
        };
        let so = offsets(&src_blocks);
        let to = offsets(&tgt_blocks);
        let mut out = GradedMap::zero(field, nvars, modules[n].clone(), modules[n - 1].clone());
        for &(p, q) in &src_blocks {
            if p >= 1 {
                if let Some(&t0) = to.get(&(p - 1, q)) {
                    let piece = tensor_left(&c.maps[p - 1], &d.modules[q]);
                    paste(&mut out, &piece, t0, so[&(p, q)], false);
                }
            }
            if q >= 1 {
                if let Some(&t0) = to.get(&(p, q - 1)) {
                    let piece = tensor_right(&c.modules[p], &d.maps[q - 1]);
                    paste(&mut out, &piece, t0, so[&(p, q)], p % 2 == 1);
                }
            }
        }
        out.validate()?;
        maps.push(out);
    }
    Ok(Complex { modules, maps })
}

fn paste<F: Field>(out: &mut GradedMap<F>, piece: &GradedMap<F>, row0: usize, col0: usize, negate: bool) {
    for (i, row) in piece.entries.iter().enumerate() {
        for (j, p) in row.iter().enumerate() {
            if !p.is_zero() {
                out.entries[row0 + i][col0 + j] = if negate { p.neg() } else { p.clone() };
            }
        }
    }
}

/// Block matrix from a grid of optional maps; `None` blocks are zero.
pub fn block_map<F: Field>(
    field: &F,
    nvars: usize,
    sources: &[FreeModule],
    targets: &[FreeModule],
    blocks: &[Vec<Option<&GradedMap<F>>>],
) -> Result<GradedMap<F>> {
    let src = sources.iter().fold(FreeModule::default(), |a, b| a.direct_sum(b));
    let tgt = targets.iter().fold(FreeModule::default(), |a, b| a.direct_sum(b));
    let mut out = GradedMap::zero(field, nvars, src, tgt);
    let mut r0 = 0;
    for (bi, t) in targets.iter().enumerate() {
        let mut c0 = 0;
        for (bj, s) in sources.iter().enumerate() {
            if let Some(m) = blocks[bi][bj] {
                if m.source != *s || m.target != *t {
                    return Err(Error::Dimension(format!("block ({bi},{bj}) has the wrong shape")));
                }
                paste(&mut out, m, r0, c0, false);
            }
            c0 += s.rank();
        }
        r0 += t.rank();
    }
    out.validate()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn koszul_on_two_variables() {
        let q = Rationals;
        let x = Poly::var(&q, 2, 0);
        let y = Poly::var(&q, 2, 1);
        let k = koszul(&q, 2, &[x.clone(), y.clone()]).unwrap();
        assert_eq!(k.len(), 2);
        assert_eq!(k[1].entries, vec![vec![y.neg()], vec![x]]);
        assert!(k[0].compose(&k[1]).unwrap().is_zero());
    }

    #[test]
    fn residue_field_over_ci_doubles() {
        let f = PrimeField::new(7).unwrap();
        let names = vec!["x".to_string(), "y".to_string()];
        let x2 = Poly::var(&f, 2, 0).pow(2);
        let y2 = Poly::var(&f, 2, 1).pow(2);
        let s = Algebra::from_generators(&f, names, &[x2, y2], 4).unwrap();
        let res = resolve_quotient(&s, &[Poly::var(&f, 2, 0), Poly::var(&f, 2, 1)], 4).unwrap();
        assert_eq!(res.ranks(), vec![1, 2, 3, 4, 5]);
        assert!(res.composites_vanish(&s).unwrap());
        assert!(res.is_minimal(&s).unwrap());
    }

    #[test]
    fn tensor_of_two_koszul_complexes_is_koszul() {
        let q = Rationals;
        let x = Poly::var(&q, 2, 0);
        let y = Poly::var(&q, 2, 1);
        let c = Complex::from_maps(FreeModule::new(vec![0]), koszul(&q, 2, &[x.clone()]).unwrap());
        let d = Complex::from_maps(FreeModule::new(vec![0]), koszul(&q, 2, &[y.clone()]).unwrap());
        let t = tensor_complexes(&q, 2, &c, &d).unwrap();
        assert_eq!(t.modules.iter().map(|m| m.rank()).collect::<Vec<_>>(), vec![1, 2, 1]);
        assert!(t.maps[0].compose(&t.maps[1]).unwrap().is_zero());
        assert_eq!(t.maps[1].entries, vec![vec![y.neg()], vec![x]]);
    }

    #[test]
    fn betti_text_layout() {
        let t = BettiTable::from_modules(&[FreeModule::new(vec![0]), FreeModule::new(vec![2, 2]), FreeModule::new(vec![4])]);
        let txt = t.to_text();
        assert!(txt.contains("total: 1 2 1"), "{txt}");
        assert!(txt.contains("1: . 2 ."), "{txt}");
        assert!(txt.contains("2: . . 1"), "{txt}");
    }
}
