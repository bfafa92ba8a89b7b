use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, Subspace};

use super::monomial::{key_degree, var_key, MonoKey, MonomialTable};
use super::poly::Poly;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

pub type Sparse<F> = Vec<(usize, <F as Field>::Elem)>;

/// Homogeneous element of a graded algebra, in the standard-monomial basis
/// of its degree.
#[derive(Clone, Debug, PartialEq)]
pub struct RingElem<F: Field> {
    pub(crate) host: u64,
    pub deg: usize,
    pub coords: Vec<F::Elem>,
}

impl<F: Field> RingElem<F> {
    pub fn is_zero(&self, f: &F) -> bool {
        self.coords.iter().all(|c| f.is_zero(c))
    }
}

/// A standard graded algebra `k[x_1..x_n]/A` with `A ⊇ (x)^{top+1}`.
///
/// When `truncated` is set, `A` is exactly `(x)^{top+1}` and the algebra stands
/// in for the polynomial ring: results are faithful in degrees `<= top`.
/// Each degree has the basis of standard monomials, i.e. the monomials that
/// are not leading terms of `[A]_d` in graded-lex order.
#[derive(Clone, Debug)]
pub struct Algebra<F: Field> {
    id: u64,
    field: F,
    names: Vec<String>,
    mons: MonomialTable,
    top: usize,
    truncated: bool,
    ideal: Vec<Subspace<F>>,
    basis: Vec<Vec<MonoKey>>,
    basis_index: Vec<HashMap<MonoKey, usize>>,
    nf: Vec<Vec<Sparse<F>>>,
    var_mul: Vec<Vec<Vec<Sparse<F>>>>,
}

fn default_names(n: usize) -> Vec<String> {
    if n <= 3 {
        ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

impl<F: Field> Algebra<F> {
    /// The polynomial ring in `names`, faithful through degree `bound`.
    pub fn polynomial(field: &F, names: Vec<String>, bound: usize) -> Result<Self> {
        let n = names.len();
        let pieces = (0..=bound).map(|d| Subspace::zero(field, super::monomial::poly_dim(n, d))).collect();
        Self::build(field, names, pieces, true)
    }

    pub fn polynomial_n(field: &F, n: usize, bound: usize) -> Result<Self> {
        Self::polynomial(field, default_names(n), bound)
    }

    /// Quotient by an ideal given degreewise; the pieces must be closed under
    /// multiplication by variables and the last piece must be everything.
    pub fn from_ideal_pieces(field: &F, names: Vec<String>, pieces: Vec<Subspace<F>>) -> Result<Self> {
        let Some(first_full) = pieces.iter().position(|p| p.is_full()) else {
            return Err(Error::Hypothesis("ideal is not primary to the maximal ideal within the given degrees".into()));
        };
        if first_full == 0 {
            return Err(Error::Hypothesis("the unit ideal gives the zero ring".into()));
        }
        let pieces = pieces.into_iter().take(first_full).collect();
        Self::build(field, names, pieces, false)
    }

    /// Quotient of the polynomial ring by the ideal generated by `gens`.
    pub fn from_generators(field: &F, names: Vec<String>, gens: &[Poly<F>], max_degree: usize) -> Result<Self> {
        let n = names.len();
        let mut hgens = Vec::new();
        for g in gens {
            if g.is_zero() {
                continue;
            }
            if !g.is_homogeneous() {
                return Err(Error::Hypothesis("generators must be homogeneous".into()));
            }
            hgens.push(g.clone());
        }
        let mut mons = MonomialTable::new(n, 0);
        let mut pieces: Vec<Subspace<F>> = Vec::new();
        for d in 0..=max_degree {
            mons.extend_to(d);
            let dim = mons.count(d);
            let mut sp = Subspace::zero(field, dim);
            for g in hgens.iter().filter(|g| g.degree() == Some(d)) {
                let mut v = vec![field.zero(); dim];
                for (k, c) in g.terms() {
                    v[mons.index_of(d, *k).unwrap()] = c.clone();
                }
                sp.insert(&v);
            }
            if d > 0 {
                let prev = &pieces[d - 1];
                'outer: for row in prev.basis() {
                    for i in 0..n {
                        if sp.is_full() {
                            break 'outer;
                        }
                        let mut v = vec![field.zero(); dim];
                        for (j, c) in row.iter().enumerate() {
                            if !field.is_zero(c) {
                                let k = mons.of_degree(d - 1)[j] + var_key(i);
                                v[mons.index_of(d, k).unwrap()] = c.clone();
                            }
                        }
                        sp.insert(&v);
                    }
                }
            }
            let full = sp.is_full();
            pieces.push(sp);
            if full {
                return Self::from_ideal_pieces(field, names, pieces);
            }
        }
        Err(Error::Hypothesis(format!("quotient is not Artinian through degree {max_degree}")))
    }

    fn build(field: &F, names: Vec<String>, pieces: Vec<Subspace<F>>, truncated: bool) -> Result<Self> {
        let n = names.len();
        if n == 0 || n > super::monomial::MAX_VARS {
            return Err(Error::Config(format!("unsupported number of variables: {n}")));
        }
        let top = pieces.len() - 1;
        let mons = MonomialTable::new(n, top);
        let mut basis = Vec::new();
        let mut basis_index = Vec::new();
        let mut nf = Vec::new();
        for (d, piece) in pieces.iter().enumerate() {
            if piece.ambient() != mons.count(d) {
                return Err(Error::Dimension(format!("ideal piece in degree {d} has wrong ambient")));
            }
            let nonpiv = piece.non_pivots();
            let pos: HashMap<usize, usize> = nonpiv.iter().enumerate().map(|(i, &m)| (m, i)).collect();
            let keys: Vec<MonoKey> = nonpiv.iter().map(|&i| mons.of_degree(d)[i]).collect();
            let mut table: Vec<Sparse<F>> = vec![Vec::new(); mons.count(d)];
            for &m in &nonpiv {
                table[m] = vec![(pos[&m], field.one())];
            }
            for (row, &p) in piece.basis().iter().zip(piece.pivots()) {
                let mut s = Vec::new();
                for &m in &nonpiv {
                    if !field.is_zero(&row[m]) {
                        s.push((pos[&m], field.neg(&row[m])));
                    }
                }
                table[p] = s;
            }
            basis_index.push(keys.iter().enumerate().map(|(i, &k)| (k, i)).collect());
            basis.push(keys);
            nf.push(table);
        }
        let mut alg = Algebra {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            field: field.clone(),
            names,
            mons,
            top,
            truncated,
            ideal: pieces,
            basis,
            basis_index,
            nf,
            var_mul: Vec::new(),
        };
        alg.var_mul = (0..=top)
            .map(|d| {
                (0..n)
                    .map(|i| {
                        alg.basis[d]
                            .iter()
                            .map(|&b| if d < top { alg.nf_of_key(d + 1, b + var_key(i)).clone() } else { Vec::new() })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(alg)
    }

    pub fn id(&self) -> u64 {
        self.id
    }
    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn nvars(&self) -> usize {
        self.names.len()
    }
    /// Highest degree with a nonzero piece (the socle degree for honest
    /// Artinian algebras, the faithful bound for truncated ones).
    pub fn top(&self) -> usize {
        self.top
    }
    pub fn is_truncated(&self) -> bool {
        self.truncated
    }
    pub fn monomials(&self) -> &MonomialTable {
        &self.mons
    }
    pub fn dim(&self, d: usize) -> usize {
        self.basis.get(d).map_or(0, |b| b.len())
    }
    pub fn dim_i(&self, d: i64) -> usize {
        if d < 0 {
            0
        } else {
            self.dim(d as usize)
        }
    }
    pub fn hilbert_function(&self) -> Vec<usize> {
        self.basis.iter().map(|b| b.len()).collect()
    }
    pub fn length(&self) -> usize {
        self.basis.iter().map(|b| b.len()).sum()
    }
    pub fn embedding_dim(&self) -> usize {
        self.dim(1)
    }
    pub fn basis_monomials(&self, d: usize) -> &[MonoKey] {
        self.basis.get(d).map_or(&[], |b| b.as_slice())
    }
    pub fn basis_position(&self, d: usize, key: MonoKey) -> Option<usize> {
        self.basis_index.get(d)?.get(&key).copied()
    }
    /// `[A]_d` as a subspace of the degree-`d` polynomials.
    pub fn ideal_piece(&self, d: usize) -> Subspace<F> {
        match self.ideal.get(d) {
            Some(p) => p.clone(),
            None => Subspace::full(&self.field, super::monomial::poly_dim(self.nvars(), d)),
        }
    }

    /// Initial degree of the defining ideal (infinite for a truncated ring
    /// whose ideal is zero through `top`).
    pub fn initial_degree(&self) -> usize {
        self.ideal.iter().position(|p| !p.is_zero()).unwrap_or(self.top + 1)
    }

    pub(crate) fn nf_of_key(&self, d: usize, key: MonoKey) -> &Sparse<F> {
        let i = self.mons.index_of(d, key).expect("monomial of the stated degree");
        &self.nf[d][i]
    }

    fn check(&self, a: &RingElem<F>) -> Result<()> {
        if a.host != self.id {
            return Err(Error::HostMismatch);
        }
        Ok(())
    }

    pub fn zero(&self, d: usize) -> RingElem<F> {
        RingElem { host: self.id, deg: d, coords: vec![self.field.zero(); self.dim(d)] }
    }

    pub fn one(&self) -> RingElem<F> {
        self.basis_elem(0, 0)
    }

    pub fn basis_elem(&self, d: usize, i: usize) -> RingElem<F> {
        let mut e = self.zero(d);
        e.coords[i] = self.field.one();
        e
    }

    pub fn elem(&self, d: usize, coords: Vec<F::Elem>) -> Result<RingElem<F>> {
        if coords.len() != self.dim(d) {
            return Err(Error::Dimension(format!("{} coordinates for degree {d} of dimension {}", coords.len(), self.dim(d))));
        }
        Ok(RingElem { host: self.id, deg: d, coords })
    }

    pub fn var(&self, i: usize) -> RingElem<F> {
        let mut e = self.zero(1);
        if self.top >= 1 {
            for (j, c) in self.nf_of_key(1, var_key(i)) {
                e.coords[*j] = c.clone();
            }
        }
        e
    }

    /// Coordinates of a degree-`d` monomial.
    pub fn monomial_coords(&self, d: usize, key: MonoKey) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.dim(d)];
        if d <= self.top {
            for (j, c) in self.nf_of_key(d, key) {
                v[*j] = c.clone();
            }
        }
        v
    }

    /// Image of a homogeneous polynomial.
    pub fn reduce(&self, p: &Poly<F>) -> Result<RingElem<F>> {
        if p.nvars() != self.nvars() {
            return Err(Error::HostMismatch);
        }
        if !p.is_homogeneous() {
            return Err(Error::Hypothesis("expected a homogeneous polynomial".into()));
        }
        let d = p.degree().unwrap_or(0);
        self.reduce_in_degree(p, d)
    }

    /// Image of the degree-`d` part of a polynomial.
    pub fn reduce_in_degree(&self, p: &Poly<F>, d: usize) -> Result<RingElem<F>> {
        let f = &self.field;
        let mut e = self.zero(d);
        if d > self.top {
            return Ok(e);
        }
        for (k, c) in p.terms() {
            if key_degree(*k) != d {
                continue;
            }
            for (j, a) in self.nf_of_key(d, *k) {
                f.mul_add_assign(&mut e.coords[*j], c, a);
            }
        }
        Ok(e)
    }

    /// Standard-monomial representative in the polynomial ring.
    pub fn lift(&self, a: &RingElem<F>) -> Poly<F> {
        let keys = self.basis_monomials(a.deg);
        Poly::from_terms(&self.field, self.nvars(), keys.iter().zip(&a.coords).map(|(k, c)| (*k, c.clone())))
    }

    pub fn lift_coords(&self, d: usize, coords: &[F::Elem]) -> Poly<F> {
        let keys = self.basis_monomials(d);
        Poly::from_terms(&self.field, self.nvars(), keys.iter().zip(coords).map(|(k, c)| (*k, c.clone())))
    }

    /// Coordinates in `P_d` of the standard-monomial lift.
    pub fn lift_to_poly_coords(&self, d: usize, coords: &[F::Elem]) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.mons.count(d)];
        for (k, c) in self.basis_monomials(d).iter().zip(coords) {
            v[self.mons.index_of(d, *k).unwrap()] = c.clone();
        }
        v
    }

    pub fn add(&self, a: &RingElem<F>, b: &RingElem<F>) -> Result<RingElem<F>> {
        self.check(a)?;
        self.check(b)?;
        if a.deg != b.deg {
            return Err(Error::Hypothesis("adding elements of different degrees".into()));
        }
        let f = &self.field;
        Ok(RingElem { host: self.id, deg: a.deg, coords: a.coords.iter().zip(&b.coords).map(|(x, y)| f.add(x, y)).collect() })
    }

    pub fn scale(&self, a: &RingElem<F>, c: &F::Elem) -> RingElem<F> {
        let f = &self.field;
        RingElem { host: a.host, deg: a.deg, coords: a.coords.iter().map(|x| f.mul(x, c)).collect() }
    }

    pub fn mul(&self, a: &RingElem<F>, b: &RingElem<F>) -> Result<RingElem<F>> {
        self.check(a)?;
        self.check(b)?;
        let coords = self.mul_coords(a, b.deg, &b.coords);
        Ok(RingElem { host: self.id, deg: a.deg + b.deg, coords })
    }

    /// `a * v` where `v` holds coordinates in degree `d`.
    pub fn mul_coords(&self, a: &RingElem<F>, d: usize, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let e = a.deg + d;
        let mut out = vec![f.zero(); self.dim(e)];
        if e > self.top {
            return out;
        }
        for (i, ca) in a.coords.iter().enumerate() {
            if f.is_zero(ca) {
                continue;
            }
            let ka = self.basis[a.deg][i];
            for (j, cv) in v.iter().enumerate() {
                if f.is_zero(cv) {
                    continue;
                }
                let c = f.mul(ca, cv);
                for (t, x) in self.nf_of_key(e, ka + self.basis[d][j]) {
                    f.mul_add_assign(&mut out[*t], &c, x);
                }
            }
        }
        out
    }

    /// `a` times the `b`-th standard monomial of degree `d`.
    pub fn mul_basis(&self, a: &RingElem<F>, d: usize, b: usize) -> Vec<F::Elem> {
        let f = &self.field;
        let e = a.deg + d;
        let mut out = vec![f.zero(); self.dim(e)];
        if e > self.top {
            return out;
        }
        let kb = self.basis[d][b];
        for (i, ca) in a.coords.iter().enumerate() {
            if f.is_zero(ca) {
                continue;
            }
            for (t, x) in self.nf_of_key(e, self.basis[a.deg][i] + kb) {
                f.mul_add_assign(&mut out[*t], ca, x);
            }
        }
        out
    }

    /// `x_var * v` for `v` in degree `d`.
    pub fn mul_var_coords(&self, var: usize, d: usize, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim(d + 1)];
        if d >= self.top {
            return out;
        }
        let table = &self.var_mul[d][var];
        for (j, cv) in v.iter().enumerate() {
            if f.is_zero(cv) {
                continue;
            }
            for (t, x) in &table[j] {
                f.mul_add_assign(&mut out[*t], cv, x);
            }
        }
        out
    }

    /// `m * v` for a monomial `m` of degree `k`.
    pub fn mul_monomial_coords(&self, key: MonoKey, d: usize, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let e = key_degree(key) + d;
        let mut out = vec![f.zero(); self.dim(e)];
        if e > self.top {
            return out;
        }
        for (j, cv) in v.iter().enumerate() {
            if f.is_zero(cv) {
                continue;
            }
            for (t, x) in self.nf_of_key(e, key + self.basis[d][j]) {
                f.mul_add_assign(&mut out[*t], cv, x);
            }
        }
        out
    }

    /// Matrix (rows = basis of degree `d`) of multiplication by `a`.
    pub fn mul_matrix(&self, a: &RingElem<F>, d: usize) -> Vec<Vec<F::Elem>> {
        (0..self.dim(d))
            .map(|j| {
                let mut v = vec![self.field.zero(); self.dim(d)];
                v[j] = self.field.one();
                self.mul_coords(a, d, &v)
            })
            .collect()
    }

    /// Degreewise pieces of the ideal generated by homogeneous elements.
    pub fn generate_pieces(&self, gens: &[RingElem<F>]) -> Vec<Subspace<F>> {
        let f = &self.field;
        let mut pieces: Vec<Subspace<F>> = Vec::with_capacity(self.top + 1);
        for d in 0..=self.top {
            let mut sp = Subspace::zero(f, self.dim(d));
            for g in gens.iter().filter(|g| g.deg == d) {
                sp.insert(&g.coords);
            }
            if d > 0 {
                'outer: for row in pieces[d - 1].basis() {
                    for i in 0..self.nvars() {
                        if sp.is_full() {
                            break 'outer;
                        }
                        sp.insert(&self.mul_var_coords(i, d - 1, row));
                    }
                }
            }
            pieces.push(sp);
        }
        pieces
    }

    /// Degreewise socle `{a : x_i a = 0 for all i}`.
    pub fn socle_pieces(&self) -> Vec<Subspace<F>> {
        let f = &self.field;
        (0..=self.top)
            .map(|d| {
                let dim = self.dim(d);
                if d == self.top {
                    return Subspace::full(f, dim);
                }
                let mut cols = Vec::new();
                for j in 0..dim {
                    let mut row = Vec::new();
                    let mut e = vec![f.zero(); dim];
                    e[j] = f.one();
                    for i in 0..self.nvars() {
                        row.extend(self.mul_var_coords(i, d, &e));
                    }
                    cols.push(row);
                }
                let m = Matrix::from_rows(f, self.dim(d + 1) * self.nvars(), cols).unwrap();
                m.left_kernel()
            })
            .collect()
    }

    pub fn socle_dims(&self) -> Vec<usize> {
        self.socle_pieces().iter().map(|s| s.dim()).collect()
    }

    pub fn is_gorenstein(&self) -> bool {
        !self.truncated && self.socle_dims().iter().sum::<usize>() == 1
    }

    /// Quotient by the ideal generated by homogeneous elements of `self`.
    pub fn quotient_by(&self, gens: &[RingElem<F>]) -> Result<Self> {
        for g in gens {
            self.check(g)?;
        }
        let gen_pieces = self.generate_pieces(gens);
        let mut pieces = Vec::new();
        let mut any_full = false;
        for d in 0..=self.top + 1 {
            let base = self.ideal_piece(d);
            let sp = if d <= self.top {
                let lifted = gen_pieces[d].basis().iter().map(|r| self.lift_to_poly_coords(d, r)).collect::<Vec<_>>();
                let mut s = base;
                for v in lifted {
                    s.insert(&v);
                }
                s
            } else {
                base
            };
            let full = sp.is_full();
            pieces.push(sp);
            if full {
                any_full = true;
                break;
            }
        }
        if self.truncated && !any_full {
            pieces.pop();
            return Self::build(&self.field, self.names.clone(), pieces, true);
        }
        if self.truncated {
            return Self::from_ideal_pieces(&self.field, self.names.clone(), pieces);
        }
        Self::from_ideal_pieces(&self.field, self.names.clone(), pieces)
    }

    /// Same algebra written in new coordinates: old variable `j` becomes the
    /// linear form `images[j]` in the new variables.
    pub fn linear_change(&self, images: &[Poly<F>], new_names: Vec<String>) -> Result<Self> {
        let f = &self.field;
        let n = self.nvars();
        if images.len() != n || new_names.len() != n {
            return Err(Error::Dimension("coordinate change of the wrong size".into()));
        }
        let lin: Vec<Vec<F::Elem>> = images
            .iter()
            .map(|p| (0..n).map(|i| p.coeff(var_key(i))).collect())
            .collect();
        let m = Matrix::from_rows(f, n, lin.clone())?;
        if f.is_zero(&m.determinant()?) {
            return Err(Error::Hypothesis("coordinate change is not invertible".into()));
        }
        let last = if self.truncated { self.top } else { self.top + 1 };
        let tbl = MonomialTable::new(n, last);
        let mut prev: Vec<Vec<F::Elem>> = vec![vec![f.one()]];
        let mut pieces = Vec::new();
        for d in 0..=last {
            let cur: Vec<Vec<F::Elem>> = if d == 0 {
                prev.clone()
            } else {
                let dim = tbl.count(d);
                tbl.of_degree(d)
                    .iter()
                    .map(|&k| {
                        let j = (0..n).find(|&j| super::monomial::exp_of(k, j) > 0).unwrap();
                        let pi = tbl.index_of(d - 1, k - var_key(j)).unwrap();
                        let mut v = vec![f.zero(); dim];
                        for (a, c) in prev[pi].iter().enumerate() {
                            if f.is_zero(c) {
                                continue;
                            }
                            let ka = tbl.of_degree(d - 1)[a];
                            for (i, l) in lin[j].iter().enumerate() {
                                if f.is_zero(l) {
                                    continue;
                                }
                                let t = tbl.index_of(d, ka + var_key(i)).unwrap();
                                f.mul_add_assign(&mut v[t], c, l);
                            }
                        }
                        v
                    })
                    .collect()
            };
            let old = self.ideal_piece(d);
            let dim = cur.len();
            let rows = old
                .basis()
                .iter()
                .map(|row| {
                    let mut v = vec![f.zero(); dim];
                    for (mi, c) in row.iter().enumerate() {
                        if f.is_zero(c) {
                            continue;
                        }
                        for (t, x) in cur[mi].iter().enumerate() {
                            f.mul_add_assign(&mut v[t], c, x);
                        }
                    }
                    v
                })
                .collect();
            pieces.push(Subspace::from_vectors(f, dim, rows));
            prev = cur;
        }
        if self.truncated {
            Self::build(f, new_names, pieces, true)
        } else {
            Self::from_ideal_pieces(f, new_names, pieces)
        }
    }

    pub fn format_elem(&self, a: &RingElem<F>) -> String {
        self.lift(a).format(&self.names)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::ring::monomial::key_from_exps;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn complete_intersection_hilbert_function() {
        let q = Rationals;
        let x = Poly::var(&q, 2, 0);
        let y = Poly::var(&q, 2, 1);
        let a = Algebra::from_generators(&q, names(&["x", "y"]), &[x.pow(3), y.pow(3)], 20).unwrap();
        assert_eq!(a.hilbert_function(), vec![1, 2, 3, 2, 1]);
        assert!(a.is_gorenstein());
        assert_eq!(a.initial_degree(), 3);
    }

    #[test]
    fn standard_monomials_avoid_leading_terms() {
        let f = PrimeField::new(101).unwrap();
        let x = Poly::var(&f, 2, 0);
        let y = Poly::var(&f, 2, 1);
        let a = Algebra::from_generators(&f, names(&["x", "y"]), &[x.pow(2), y.pow(2)], 10).unwrap();
        assert_eq!(a.basis_monomials(2), &[key_from_exps(&[1, 1])]);
    }

    #[test]
    fn multiplication_respects_relations() {
        let f = PrimeField::new(7).unwrap();
        let x = Poly::var(&f, 2, 0);
        let y = Poly::var(&f, 2, 1);
        let rel = x.mul(&x).sub(&y.mul(&y));
        let a = Algebra::from_generators(&f, names(&["x", "y"]), &[rel, x.mul(&y)], 10).unwrap();
        assert_eq!(a.hilbert_function(), vec![1, 2, 1]);
        let xe = a.var(0);
        let ye = a.var(1);
        let x2 = a.mul(&xe, &xe).unwrap();
        let y2 = a.mul(&ye, &ye).unwrap();
        assert_eq!(x2, y2);
        assert!(a.mul(&xe, &ye).unwrap().is_zero(&f));
    }

    #[test]
    fn host_mismatch_is_an_error() {
        let f = PrimeField::new(7).unwrap();
        let a = Algebra::polynomial_n(&f, 2, 3).unwrap();
        let b = Algebra::polynomial_n(&f, 2, 3).unwrap();
        assert_eq!(a.mul(&a.var(0), &b.var(0)).unwrap_err(), Error::HostMismatch);
    }

    #[test]
    fn coordinate_change_preserves_hilbert_function() {
        let q = Rationals;
        let x = Poly::var(&q, 2, 0);
        let y = Poly::var(&q, 2, 1);
        let a = Algebra::from_generators(&q, names(&["x", "y"]), &[x.pow(3), y.pow(2)], 10).unwrap();
        let b = a.linear_change(&[x.add(&y), y.sub(&x)], names(&["u", "v"])).unwrap();
        assert_eq!(a.hilbert_function(), b.hilbert_function());
        assert!(b.is_gorenstein());
    }
}
