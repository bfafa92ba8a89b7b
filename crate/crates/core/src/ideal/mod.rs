//! Homogeneous ideals of a graded Artinian algebra, held degree by degree.

mod duality;
mod inverse_system;

pub use duality::{duality_selftest, duality_suite, random_gorenstein_pair, random_ideal, DualityReport, DualitySelftest};
pub use inverse_system::{catalecticant, generic_dual_form, inverse_system};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, Subspace};
use crate::ring::monomial::binomial;
use crate::ring::{Algebra, Poly, RingElem};

/// Homogeneous ideal of an algebra `S`, stored as `[I]_d ⊆ [S]_d` for
/// `d = 0..=top(S)`. For truncated hosts, pieces above `valid_through` are
/// not trustworthy.
#[derive(Clone, Debug, PartialEq)]
pub struct Ideal<F: Field> {
    host: u64,
    pieces: Vec<Subspace<F>>,
    valid_through: usize,
}

impl<F: Field> Ideal<F> {
    pub fn generated(alg: &Algebra<F>, gens: &[RingElem<F>]) -> Result<Self> {
        if gens.iter().any(|g| g.host != alg.id()) {
            return Err(Error::HostMismatch);
        }
        Ok(Ideal { host: alg.id(), pieces: alg.generate_pieces(gens), valid_through: alg.top() })
    }

    pub fn from_polys(alg: &Algebra<F>, gens: &[Poly<F>]) -> Result<Self> {
        let g = gens.iter().filter(|p| !p.is_zero()).map(|p| alg.reduce(p)).collect::<Result<Vec<_>>>()?;
        Self::generated(alg, &g)
    }

    pub fn from_pieces(alg: &Algebra<F>, pieces: Vec<Subspace<F>>) -> Result<Self> {
        if pieces.len() != alg.top() + 1 {
            return Err(Error::Dimension("ideal pieces must cover every degree".into()));
        }
        Ok(Ideal { host: alg.id(), pieces, valid_through: alg.top() })
    }

    pub fn zero(alg: &Algebra<F>) -> Self {
        let f = alg.field();
        Ideal {
            host: alg.id(),
            pieces: (0..=alg.top()).map(|d| Subspace::zero(f, alg.dim(d))).collect(),
            valid_through: alg.top(),
        }
    }

    pub fn unit(alg: &Algebra<F>) -> Self {
        Self::maximal_power(alg, 0)
    }

    pub fn maximal(alg: &Algebra<F>) -> Self {
        Self::maximal_power(alg, 1)
    }

    /// `m^e`.
    pub fn maximal_power(alg: &Algebra<F>, e: usize) -> Self {
        let f = alg.field();
        Ideal {
            host: alg.id(),
            pieces: (0..=alg.top())
                .map(|d| if d >= e { Subspace::full(f, alg.dim(d)) } else { Subspace::zero(f, alg.dim(d)) })
                .collect(),
            valid_through: alg.top(),
        }
    }

    fn check(&self, alg: &Algebra<F>) -> Result<()> {
        if self.host != alg.id() {
            return Err(Error::HostMismatch);
        }
        Ok(())
    }

    pub fn host(&self) -> u64 {
        self.host
    }
    pub fn piece(&self, d: usize) -> &Subspace<F> {
        &self.pieces[d]
    }
    pub fn pieces(&self) -> &[Subspace<F>] {
        &self.pieces
    }
    pub fn valid_through(&self) -> usize {
        self.valid_through
    }
    pub fn dims(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.dim()).collect()
    }
    pub fn length(&self) -> usize {
        self.pieces.iter().map(|p| p.dim()).sum()
    }
    pub fn is_zero(&self) -> bool {
        self.pieces.iter().all(|p| p.is_zero())
    }
    pub fn is_unit(&self) -> bool {
        self.pieces.first().is_some_and(|p| p.is_full())
    }

    pub fn contains(&self, a: &RingElem<F>) -> bool {
        a.deg >= self.pieces.len() || self.pieces[a.deg].contains(&a.coords)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.pieces.iter().zip(&other.pieces).all(|(a, b)| a.is_subspace_of(b))
    }

    /// Equality on the degrees where both are trustworthy.
    pub fn same_as(&self, other: &Self) -> bool {
        let t = self.valid_through.min(other.valid_through);
        self.pieces.iter().zip(&other.pieces).take(t + 1).all(|(a, b)| a == b)
    }

    pub fn sum(&self, other: &Self) -> Self {
        Ideal {
            host: self.host,
            pieces: self.pieces.iter().zip(&other.pieces).map(|(a, b)| a.sum(b)).collect(),
            valid_through: self.valid_through.min(other.valid_through),
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Ideal {
            host: self.host,
            pieces: self.pieces.iter().zip(&other.pieces).map(|(a, b)| a.intersection(b)).collect(),
            valid_through: self.valid_through.min(other.valid_through),
        }
    }

    /// Minimal homogeneous generators: in each degree, a basis of a complement
    /// of `m [I]_{d-1}` in `[I]_d`, chosen in canonical order.
    pub fn mingens(&self, alg: &Algebra<F>) -> Vec<RingElem<F>> {
        let f = alg.field();
        let mut out = Vec::new();
        for d in 0..self.pieces.len() {
            let mut lower = Subspace::zero(f, alg.dim(d));
            if d > 0 {
                'outer: for row in self.pieces[d - 1].basis() {
                    for i in 0..alg.nvars() {
                        if lower.dim() == self.pieces[d].dim() {
                            break 'outer;
                        }
                        lower.insert(&alg.mul_var_coords(i, d - 1, row));
                    }
                }
            }
            for v in self.pieces[d].complement_in(&lower) {
                out.push(alg.elem(d, v).unwrap());
            }
        }
        out
    }

    pub fn mingen_degrees(&self, alg: &Algebra<F>) -> Vec<usize> {
        self.mingens(alg).iter().map(|g| g.deg).collect()
    }

    pub fn num_mingens(&self, alg: &Algebra<F>) -> usize {
        self.mingens(alg).len()
    }

    /// Largest degree of a minimal generator; `None` for the zero ideal.
    pub fn mgd(&self, alg: &Algebra<F>) -> Option<usize> {
        self.mingen_degrees(alg).into_iter().max()
    }

    /// Least degree of a nonzero element; `None` for the zero ideal.
    pub fn initial_degree(&self) -> Option<usize> {
        self.pieces.iter().position(|p| !p.is_zero())
    }

    pub fn product(&self, alg: &Algebra<F>, other: &Self) -> Result<Self> {
        self.check(alg)?;
        other.check(alg)?;
        let a = self.mingens(alg);
        let b = other.mingens(alg);
        let mut gens = Vec::new();
        for x in &a {
            for y in &b {
                gens.push(alg.mul(x, y)?);
            }
        }
        let mut out = Self::generated(alg, &gens)?;
        out.valid_through = self.valid_through.min(other.valid_through);
        Ok(out)
    }

    pub fn power(&self, alg: &Algebra<F>, e: usize) -> Result<Self> {
        let mut out = Self::unit(alg);
        for _ in 0..e {
            out = out.product(alg, self)?;
        }
        Ok(out)
    }

    /// `(self : other) = {a : a·other ⊆ self}`.
    pub fn colon(&self, alg: &Algebra<F>, other: &Self) -> Result<Self> {
        self.check(alg)?;
        other.check(alg)?;
        let gens = other.mingens(alg);
        let mut out = self.colon_elems(alg, &gens)?;
        if alg.is_truncated() {
            let shift = gens.iter().map(|g| g.deg).max().unwrap_or(0);
            out.valid_through = self.valid_through.min(other.valid_through).saturating_sub(shift);
        }
        Ok(out)
    }

    /// `(self : f)`.
    pub fn colon_elem(&self, alg: &Algebra<F>, g: &RingElem<F>) -> Result<Self> {
        let mut out = self.colon_elems(alg, std::slice::from_ref(g))?;
        if alg.is_truncated() {
            out.valid_through = self.valid_through.saturating_sub(g.deg);
        }
        Ok(out)
    }

    fn colon_elems(&self, alg: &Algebra<F>, gens: &[RingElem<F>]) -> Result<Self> {
        self.check(alg)?;
        let f = alg.field();
        let mut pieces = Vec::new();
        for d in 0..=alg.top() {
            let dim = alg.dim(d);
            let live: Vec<&RingElem<F>> = gens.iter().filter(|g| g.deg + d <= alg.top()).collect();
            if live.is_empty() {
                pieces.push(Subspace::full(f, dim));
                continue;
            }
            let width: usize = live.iter().map(|g| alg.dim(g.deg + d)).sum();
            let mut rows = Vec::with_capacity(dim);
            for j in 0..dim {
                let mut e = vec![f.zero(); dim];
                e[j] = f.one();
                let mut row = Vec::with_capacity(width);
                for g in &live {
                    let prod = alg.mul_coords(g, d, &e);
                    row.extend(self.pieces[g.deg + d].reduce(&prod));
                }
                rows.push(row);
            }
            let m = Matrix::from_rows(f, width, rows)?;
            pieces.push(m.left_kernel());
        }
        Ok(Ideal { host: self.host, pieces, valid_through: self.valid_through })
    }

    /// `(0 : self)`.
    pub fn annihilator(&self, alg: &Algebra<F>) -> Result<Self> {
        Self::zero(alg).colon(alg, self)
    }

    /// Degreewise dimensions of `S/I`.
    pub fn quotient_hf(&self, alg: &Algebra<F>) -> Vec<usize> {
        (0..self.pieces.len()).map(|d| alg.dim(d) - self.pieces[d].dim()).collect()
    }

    /// `λ(S/I)`.
    pub fn colength(&self, alg: &Algebra<F>) -> usize {
        self.quotient_hf(alg).iter().sum()
    }

    /// Top degree of `S/I`; `None` when `I = S`.
    pub fn quotient_topdeg(&self, alg: &Algebra<F>) -> Option<usize> {
        self.quotient_hf(alg).iter().rposition(|&h| h > 0)
    }

    /// Degreewise dimensions of the socle `(I : m)/I` of `S/I`.
    pub fn quotient_socle_dims(&self, alg: &Algebra<F>) -> Result<Vec<usize>> {
        let c = self.colon(alg, &Self::maximal(alg))?;
        Ok(c.pieces.iter().zip(&self.pieces).map(|(a, b)| a.dim() - b.dim()).collect())
    }

    /// The quotient algebra `S/I`.
    pub fn quotient_algebra(&self, alg: &Algebra<F>) -> Result<Algebra<F>> {
        self.check(alg)?;
        alg.quotient_by(&self.mingens(alg))
    }

    /// Standard-monomial lifts of the minimal generators.
    pub fn lifted_gens(&self, alg: &Algebra<F>) -> Vec<Poly<F>> {
        self.mingens(alg).iter().map(|g| alg.lift(g)).collect()
    }
}

/// Two readings of the order of an algebra `S = P/A`: the initial degree of
/// `A`, and the first `i` with `dim S_i` below `binom(e-1+i, i)` where `e` is the
/// embedding dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct OrderValue {
    pub initial_degree: usize,
    pub hilbert_drop: usize,
}

pub fn order_of<F: Field>(alg: &Algebra<F>) -> OrderValue {
    let e = alg.embedding_dim();
    let hf = alg.hilbert_function();
    let drop = (1..=alg.top() + 1)
        .find(|&i| hf.get(i).copied().unwrap_or(0) < binomial(e + i - 1, i))
        .unwrap_or(alg.top() + 1);
    OrderValue { initial_degree: alg.initial_degree(), hilbert_drop: drop }
}

/// `v(S)`, the initial degree of the defining ideal.
pub fn v_of<F: Field>(alg: &Algebra<F>) -> usize {
    order_of(alg).initial_degree
}

/// If `topdeg(S/B) < mgd(B)` then `(B : m) ≠ (mB : m)`. Returns `None` when the
/// hypothesis fails, otherwise whether the conclusion held.
pub fn check_colon_inequality<F: Field>(alg: &Algebra<F>, b: &Ideal<F>) -> Result<Option<bool>> {
    let m = Ideal::maximal(alg);
    let (Some(top), Some(mgd)) = (b.quotient_topdeg(alg), b.mgd(alg)) else {
        return Ok(None);
    };
    if top >= mgd {
        return Ok(None);
    }
    let lhs = b.colon(alg, &m)?;
    let mb = m.product(alg, b)?;
    let rhs = mb.colon(alg, &m)?;
    Ok(Some(!lhs.same_as(&rhs)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn ci(f: &PrimeField, a: usize, b: usize) -> Algebra<PrimeField> {
        let x = Poly::var(f, 2, 0);
        let y = Poly::var(f, 2, 1);
        Algebra::from_generators(f, vec!["x".into(), "y".into()], &[x.pow(a), y.pow(b)], 30).unwrap()
    }

    #[test]
    fn socle_and_colon_in_complete_intersection() {
        let f = PrimeField::new(101).unwrap();
        let s = ci(&f, 3, 3);
        let m = Ideal::maximal(&s);
        let soc = Ideal::zero(&s).colon(&s, &m).unwrap();
        assert_eq!(soc.dims(), vec![0, 0, 0, 0, 1]);
        assert_eq!(m.annihilator(&s).unwrap(), soc);
    }

    #[test]
    fn invariants_of_teter_pair() {
        let f = PrimeField::new(101).unwrap();
        let s = ci(&f, 5, 4);
        let y = s.var(1);
        let x = s.var(0);
        let x2 = s.mul(&x, &x).unwrap();
        let k = Ideal::generated(&s, &[y, x2]).unwrap();
        assert_eq!(k.colength(&s), 2);
        assert_eq!(k.quotient_topdeg(&s), Some(1));
        assert_eq!(k.mgd(&s), Some(2));
        assert_eq!(k.num_mingens(&s), 2);
        assert_eq!(v_of(&s), 4);
        assert_eq!(order_of(&s).hilbert_drop, 4);
        let j = k.annihilator(&s).unwrap();
        assert_eq!(j.length(), 2);
        assert_eq!(j.num_mingens(&s), 1);
    }

    #[test]
    fn zero_ideal_has_no_generator_degree() {
        let q = Rationals;
        let s = Algebra::polynomial_n(&q, 2, 4).unwrap();
        let z = Ideal::zero(&s);
        assert_eq!(z.mgd(&s), None);
        assert_eq!(z.initial_degree(), None);
    }

    #[test]
    fn colon_in_truncated_ring_tracks_validity() {
        let q = Rationals;
        let p = Algebra::polynomial_n(&q, 2, 8).unwrap();
        let x = p.var(0);
        let y = p.var(1);
        let b = Ideal::generated(&p, &[p.mul(&x, &x).unwrap(), p.mul(&y, &y).unwrap()]).unwrap();
        let m = Ideal::maximal(&p);
        let c = b.colon(&p, &m).unwrap();
        assert_eq!(c.valid_through(), 7);
        assert_eq!(c.dims()[..3], [0, 0, 3]);
    }
}
