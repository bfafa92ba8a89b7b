use crate::error::{Error, Result};
use crate::field::Field;

use super::Subspace;

/// Dense matrix over a field, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<Vec<F::Elem>>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        let z = field.zero();
        Matrix { field: field.clone(), rows, cols, data: vec![vec![z; cols]; rows] }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i][i] = field.one();
        }
        m
    }

    pub fn from_rows(field: &F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Dimension(format!("row of length {} in a {cols}-column matrix", r.len())));
        }
        Ok(Matrix { field: field.clone(), rows: rows.len(), cols, data: rows })
    }

    pub fn from_i64(field: &F, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect();
        Matrix { field: field.clone(), rows: rows.len(), cols, data }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn nrows(&self) -> usize {
        self.rows
    }
    pub fn ncols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i][j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i][j] = v;
    }
    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i]
    }
    pub fn rows(&self) -> &[Vec<F::Elem>] {
        &self.data
    }
    pub fn into_rows(self) -> Vec<Vec<F::Elem>> {
        self.data
    }
    pub fn push_row(&mut self, row: Vec<F::Elem>) {
        assert_eq!(row.len(), self.cols);
        self.data.push(row);
        self.rows += 1;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    f.mul_add_assign(&mut out.data[i][j], a, &other.data[k][j]);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        self.data
            .iter()
            .map(|row| {
                let mut acc = f.zero();
                for (a, b) in row.iter().zip(v) {
                    f.mul_add_assign(&mut acc, a, b);
                }
                acc
            })
            .collect()
    }

    /// In-place reduced row echelon form. Pivots are chosen as the first
    /// nonzero entry scanning columns left to right and rows top to bottom.
    /// Returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !f.is_zero(&self.data[i][c])) else {
                continue;
            };
            self.data.swap(r, p);
            let inv = f.inv(&self.data[r][c]).expect("nonzero pivot");
            if !f.is_one(&inv) {
                for x in self.data[r][c..].iter_mut() {
                    *x = f.mul(x, &inv);
                }
            }
            let pivot_row = std::mem::take(&mut self.data[r]);
            for (i, row) in self.data.iter_mut().enumerate() {
                if i == r || f.is_zero(&row[c]) {
                    continue;
                }
                let factor = f.neg(&row[c]);
                for j in c..self.cols {
                    if !f.is_zero(&pivot_row[j]) {
                        f.mul_add_assign(&mut row[j], &factor, &pivot_row[j]);
                    }
                }
            }
            self.data[r] = pivot_row;
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place();
        (m, p)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : A x = 0}`, returned as a subspace in canonical form.
    pub fn kernel(&self) -> Subspace<F> {
        let (r, pivots) = self.rref();
        let f = &self.field;
        let mut is_pivot = vec![None; self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(i);
        }
        let mut vecs = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = f.neg(&r.data[i][free]);
            }
            vecs.push(v);
        }
        Subspace::from_vectors(f, self.cols, vecs)
    }

    /// Basis of `{c : c A = 0}` (relations among the rows).
    pub fn left_kernel(&self) -> Subspace<F> {
        self.transpose().kernel()
    }

    /// Solve `A x = b`: a particular solution with free variables set to zero,
    /// together with the kernel.
    pub fn solve(&self, b: &[F::Elem]) -> Result<(Vec<F::Elem>, Subspace<F>)> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!("rhs of length {} for {} rows", b.len(), self.rows)));
        }
        let f = &self.field;
        let mut aug = Self::zeros(f, self.rows, self.cols + 1);
        for i in 0..self.rows {
            aug.data[i][..self.cols].clone_from_slice(&self.data[i]);
            aug.data[i][self.cols] = b[i].clone();
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return Err(Error::Inconsistent);
        }
        let mut x = vec![f.zero(); self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = aug.data[i][self.cols].clone();
        }
        Ok((x, self.kernel()))
    }

    pub fn determinant(&self) -> Result<F::Elem> {
        if self.rows != self.cols {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let f = &self.field;
        let mut m = self.data.clone();
        let n = self.rows;
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !f.is_zero(&m[i][c])) else {
                return Ok(f.zero());
            };
            if p != c {
                m.swap(p, c);
                det = f.neg(&det);
            }
            det = f.mul(&det, &m[c][c]);
            let inv = f.inv(&m[c][c]).unwrap();
            for i in c + 1..n {
                if f.is_zero(&m[i][c]) {
                    continue;
                }
                let factor = f.neg(&f.mul(&m[i][c], &inv));
                for j in c..n {
                    let t = m[c][j].clone();
                    f.mul_add_assign(&mut m[i][j], &factor, &t);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let f = &self.field;
        let mut aug = Self::zeros(f, n, 2 * n);
        for i in 0..n {
            aug.data[i][..n].clone_from_slice(&self.data[i]);
            aug.data[i][n + i] = f.one();
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::DivisionByZero);
        }
        let data = aug.data.into_iter().map(|r| r[n..].to_vec()).collect();
        Ok(Matrix { field: f.clone(), rows: n, cols: n, data })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn rref_small_example_over_gf5_and_q() {
        // Over GF(5) the second row is twice the first, so the rank drops.
        let f = PrimeField::new(5).unwrap();
        let m = Matrix::from_i64(&f, &[&[1, 2, 3], &[2, 4, 1]]);
        let (r, piv) = m.rref();
        assert_eq!(piv, vec![0]);
        assert_eq!(r.row(0), &[1, 2, 3]);
        assert_eq!(r.row(1), &[0, 0, 0]);
        let q = Rationals;
        let m = Matrix::from_i64(&q, &[&[1, 2, 3], &[2, 4, 1]]);
        let (r, piv) = m.rref();
        assert_eq!(piv, vec![0, 2]);
        assert_eq!(r, Matrix::from_i64(&q, &[&[1, 2, 0], &[0, 0, 1]]));
    }

    #[test]
    fn solve_with_free_variables_zero() {
        let q = Rationals;
        let m = Matrix::from_i64(&q, &[&[1, 1, 0], &[0, 1, 1]]);
        let b = vec![q.from_i64(2), q.from_i64(3)];
        let (x, ker) = m.solve(&b).unwrap();
        assert_eq!(x, vec![q.from_i64(-1), q.from_i64(3), q.from_i64(0)]);
        assert_eq!(ker.dim(), 1);
        assert_eq!(m.mul_vec(&x), b);
    }

    #[test]
    fn inconsistent_system() {
        let f = PrimeField::new(7).unwrap();
        let m = Matrix::from_i64(&f, &[&[1, 1], &[2, 2]]);
        assert_eq!(m.solve(&[1, 3]).unwrap_err(), Error::Inconsistent);
    }

    #[test]
    fn inverse_and_determinant() {
        let q = Rationals;
        let m = Matrix::from_i64(&q, &[&[2, 1], &[7, 4]]);
        assert_eq!(m.determinant().unwrap(), q.from_i64(1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(&q, 2));
    }
}
