use crate::field::Field;

use super::Matrix;

/// A linear subspace of `k^n` held as a reduced row echelon basis with
/// normalized pivots. Two subspaces are equal iff their bases are identical.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: &F, ambient: usize) -> Self {
        Subspace { field: field.clone(), ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        let mut rows = Vec::with_capacity(ambient);
        for i in 0..ambient {
            let mut r = vec![field.zero(); ambient];
            r[i] = field.one();
            rows.push(r);
        }
        Subspace { field: field.clone(), ambient, rows, pivots: (0..ambient).collect() }
    }

    pub fn from_vectors(field: &F, ambient: usize, vecs: Vec<Vec<F::Elem>>) -> Self {
        if vecs.is_empty() {
            return Self::zero(field, ambient);
        }
        let mut m = Matrix::from_rows(field, ambient, vecs).expect("vector length matches ambient");
        let pivots = m.rref_in_place();
        let mut rows = m.into_rows();
        rows.truncate(pivots.len());
        Subspace { field: field.clone(), ambient, rows, pivots }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.rows.len()
    }
    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }
    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }
    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Subtract the multiples of basis rows that clear every pivot position.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let mut w = v.to_vec();
        self.reduce_in_place(&mut w);
        w
    }

    pub fn reduce_in_place(&self, w: &mut [F::Elem]) {
        let f = &self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&w[p]) {
                continue;
            }
            let c = f.neg(&w[p]);
            for j in p..self.ambient {
                if !f.is_zero(&row[j]) {
                    f.mul_add_assign(&mut w[j], &c, &row[j]);
                }
            }
        }
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let f = &self.field;
        self.reduce(v).iter().all(|x| f.is_zero(x))
    }

    /// Coordinates of a member in the canonical basis (read off the pivots).
    pub fn coords(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    pub fn combine(&self, coeffs: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.ambient];
        for (c, row) in coeffs.iter().zip(&self.rows) {
            if f.is_zero(c) {
                continue;
            }
            for (o, r) in out.iter_mut().zip(row) {
                f.mul_add_assign(o, c, r);
            }
        }
        out
    }

    /// Add one vector, keeping the canonical form. Returns whether the
    /// dimension grew.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        let f = self.field.clone();
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&w[p]).unwrap();
        for x in w[p..].iter_mut() {
            *x = f.mul(x, &inv);
        }
        for row in self.rows.iter_mut() {
            if f.is_zero(&row[p]) {
                continue;
            }
            let c = f.neg(&row[p]);
            for j in p..self.ambient {
                if !f.is_zero(&w[j]) {
                    f.mul_add_assign(&mut row[j], &c, &w[j]);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, w);
        true
    }

    pub fn sum(&self, other: &Self) -> Self {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        let (big, small) = if self.dim() >= other.dim() { (self, other) } else { (other, self) };
        let mut out = big.clone();
        for r in &small.rows {
            if out.is_full() {
                break;
            }
            out.insert(r);
        }
        out
    }

    pub fn intersection(&self, other: &Self) -> Self {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(f, self.ambient);
        }
        if other.is_full() {
            return self.clone();
        }
        if self.is_full() {
            return other.clone();
        }
        let residues: Vec<Vec<F::Elem>> = self.rows.iter().map(|r| other.reduce(r)).collect();
        let m = Matrix::from_rows(f, self.ambient, residues).unwrap();
        let rel = m.left_kernel();
        let vecs = rel.basis().iter().map(|c| self.combine(c)).collect();
        Self::from_vectors(f, self.ambient, vecs)
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.dim() <= other.dim() && self.rows.iter().all(|r| other.contains(r))
    }

    /// `dim(self) - dim(sub)` for `sub ⊆ self`.
    pub fn quotient_dim(&self, sub: &Self) -> usize {
        debug_assert!(sub.is_subspace_of(self));
        self.dim() - sub.dim()
    }

    /// Basis vectors of `self` that extend `sub ∩ self` to a basis of `self`,
    /// chosen greedily in canonical order.
    pub fn complement_in(&self, sub: &Self) -> Vec<Vec<F::Elem>> {
        let mut acc = sub.clone();
        let mut out = Vec::new();
        for r in &self.rows {
            if acc.insert(r) {
                out.push(r.clone());
            }
        }
        out
    }

    /// Coordinates that are not pivots: a basis of a complement of `self`.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_p = vec![false; self.ambient];
        for &p in &self.pivots {
            is_p[p] = true;
        }
        (0..self.ambient).filter(|&i| !is_p[i]).collect()
    }

    /// Image under a linear map given on coordinates.
    pub fn map<G: Fn(&[F::Elem]) -> Vec<F::Elem>>(&self, target_dim: usize, g: G) -> Self {
        let vecs = self.rows.iter().map(|r| g(r)).collect();
        Self::from_vectors(&self.field, target_dim, vecs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn sp(f: &PrimeField, n: usize, v: &[&[i64]]) -> Subspace<PrimeField> {
        Subspace::from_vectors(f, n, v.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect())
    }

    #[test]
    fn sum_and_intersection_dimensions() {
        let f = PrimeField::new(101).unwrap();
        let u = sp(&f, 4, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        let v = sp(&f, 4, &[&[0, 1, 0, 0], &[0, 0, 1, 0]]);
        assert_eq!(u.sum(&v).dim(), 3);
        let w = u.intersection(&v);
        assert_eq!(w, sp(&f, 4, &[&[0, 1, 0, 0]]));
    }

    #[test]
    fn insert_matches_batch() {
        let f = PrimeField::new(7).unwrap();
        let vecs: Vec<Vec<u64>> = vec![vec![1, 2, 3, 4], vec![2, 4, 6, 1], vec![0, 0, 1, 1], vec![3, 6, 2, 5]];
        let batch = Subspace::from_vectors(&f, 4, vecs.clone());
        let mut inc = Subspace::zero(&f, 4);
        for v in &vecs {
            inc.insert(v);
        }
        assert_eq!(batch, inc);
    }
}
