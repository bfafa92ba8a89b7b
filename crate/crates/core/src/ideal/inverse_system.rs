use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, Subspace};
use crate::ring::monomial::{key_divides, monomials_of_degree, MonomialTable};
use crate::ring::{Algebra, Poly};

/// Matrix of the contraction `[P]_d -> D_{s-d}`, `g ↦ g ∘ F`, rows indexed by
/// degree-`d` monomials. The divided-power action sends `x^a ∘ X^[b]` to
/// `X^[b-a]` when `a ≤ b` and to zero otherwise, so no factorials appear.
pub fn catalecticant<F: Field>(form: &Poly<F>, d: usize) -> Matrix<F> {
    let f = form.field();
    let n = form.nvars();
    let s = form.degree().unwrap_or(0);
    let rows_m = monomials_of_degree(n, d);
    if d > s {
        return Matrix::zeros(f, rows_m.len(), 0);
    }
    let cols = MonomialTable::new(n, s - d);
    let width = cols.count(s - d);
    let mut m = Matrix::zeros(f, rows_m.len(), width);
    for (i, &a) in rows_m.iter().enumerate() {
        for (b, c) in form.terms() {
            if key_divides(a, *b) {
                let j = cols.index_of(s - d, b - a).unwrap();
                let v = f.add(m.get(i, j), c);
                m.set(i, j, v);
            }
        }
    }
    m
}

/// `S = P/Ann(F)` for a homogeneous dual form `F` (coefficients on divided
/// power monomials). The result is Gorenstein with socle degree `deg F`.
pub fn inverse_system<F: Field>(form: &Poly<F>, names: Vec<String>) -> Result<Algebra<F>> {
    if form.is_zero() || !form.is_homogeneous() {
        return Err(Error::Hypothesis("dual form must be a nonzero homogeneous polynomial".into()));
    }
    if names.len() != form.nvars() {
        return Err(Error::Dimension("variable names do not match the dual form".into()));
    }
    let f = form.field();
    let s = form.degree().unwrap();
    let mut pieces = Vec::with_capacity(s + 2);
    for d in 0..=s {
        pieces.push(catalecticant(form, d).left_kernel());
    }
    let top_dim = monomials_of_degree(form.nvars(), s + 1).len();
    pieces.push(Subspace::full(f, top_dim));
    Algebra::from_ideal_pieces(f, names, pieces)
}

/// Random dual form of degree `s` with every coefficient drawn from `rng`.
pub fn generic_dual_form<F: Field, R: Rng + ?Sized>(field: &F, n: usize, s: usize, rng: &mut R) -> Poly<F> {
    Poly::from_terms(field, n, monomials_of_degree(n, s).into_iter().map(|k| (k, field.random(rng))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::ideal::Ideal;
    use crate::ring::monomial::key_from_exps;
    use rand::SeedableRng;

    fn names(n: usize) -> Vec<String> {
        ["x", "y", "z", "w"][..n].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn divided_square_product_gives_cubes() {
        let q = Rationals;
        let form = Poly::monomial(&q, 2, key_from_exps(&[2, 2]), q.one());
        let s = inverse_system(&form, names(2)).unwrap();
        assert_eq!(s.hilbert_function(), vec![1, 2, 3, 2, 1]);
        let p = Algebra::polynomial_n(&q, 2, 6).unwrap();
        let gens = Ideal::from_pieces(&p, (0..=6).map(|d| s.ideal_piece(d)).collect()).unwrap();
        let lifted = gens.lifted_gens(&p);
        let x3 = Poly::monomial(&q, 2, key_from_exps(&[3, 0]), q.one());
        let y3 = Poly::monomial(&q, 2, key_from_exps(&[0, 3]), q.one());
        assert_eq!(lifted, vec![x3, y3]);
    }

    #[test]
    fn generic_binary_cubic() {
        let f = PrimeField::new(101).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let form = generic_dual_form(&f, 2, 3, &mut rng);
        let s = inverse_system(&form, names(2)).unwrap();
        assert_eq!(s.hilbert_function(), vec![1, 2, 2, 1]);
        assert!(s.is_gorenstein());
    }

    #[test]
    fn generic_ternary_octic() {
        let f = PrimeField::new(101).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let form = generic_dual_form(&f, 3, 8, &mut rng);
        let s = inverse_system(&form, names(3)).unwrap();
        assert_eq!(s.hilbert_function(), vec![1, 3, 6, 10, 15, 10, 6, 3, 1]);
        assert_eq!(crate::ideal::v_of(&s), 5);
    }
}
