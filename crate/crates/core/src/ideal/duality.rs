use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ring::Algebra;

use super::{generic_dual_form, inverse_system, Ideal};

/// Outcome of the Gorenstein duality identities for a pair of ideals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    /// `λ(S/A) = λ(ann A)` and likewise for `B`.
    pub length: bool,
    /// `ann ann A = A` and likewise for `B`.
    pub double_annihilator: bool,
    /// `ann(A+B) = ann A ∩ ann B`.
    pub sum: bool,
    /// `ann(A∩B) = ann A + ann B`.
    pub intersection: bool,
    /// `λ(B'/A') = λ(ann A' / ann B')` for the nested pairs `A∩B ⊆ B` and `A ⊆ A+B`.
    pub nested_length: bool,
}

impl DualityReport {
    pub fn all(&self) -> bool {
        self.length && self.double_annihilator && self.sum && self.intersection && self.nested_length
    }
}

pub fn duality_suite<F: Field>(alg: &Algebra<F>, a: &Ideal<F>, b: &Ideal<F>) -> Result<DualityReport> {
    if !alg.is_gorenstein() {
        return Err(Error::Hypothesis("duality identities need a Gorenstein algebra".into()));
    }
    let ann_a = a.annihilator(alg)?;
    let ann_b = b.annihilator(alg)?;
    let length = a.colength(alg) == ann_a.length() && b.colength(alg) == ann_b.length();
    let double_annihilator = ann_a.annihilator(alg)? == *a && ann_b.annihilator(alg)? == *b;
    let sum = a.sum(b).annihilator(alg)? == ann_a.intersection(&ann_b);
    let ab = a.intersection(b);
    let ann_ab = ab.annihilator(alg)?;
    let intersection = ann_ab == ann_a.sum(&ann_b);
    let a_plus_b = a.sum(b);
    let ann_apb = a_plus_b.annihilator(alg)?;
    let nested = |small: &Ideal<F>, big: &Ideal<F>, ann_small: &Ideal<F>, ann_big: &Ideal<F>| {
        big.length() - small.length() == ann_small.length() - ann_big.length()
    };
    let nested_length = nested(&ab, b, &ann_ab, &ann_b) && nested(a, &a_plus_b, &ann_a, &ann_apb);
    Ok(DualityReport { length, double_annihilator, sum, intersection, nested_length })
}

/// Random ideal generated by one to three homogeneous elements of `alg`.
pub fn random_ideal<F: Field, R: Rng + ?Sized>(alg: &Algebra<F>, rng: &mut R) -> Result<Ideal<F>> {
    let f = alg.field();
    let count = rng.gen_range(1..=3usize);
    let mut gens = Vec::new();
    for _ in 0..count {
        let d = rng.gen_range(1..=alg.top().max(1));
        let coords = (0..alg.dim(d)).map(|_| f.random(rng)).collect();
        gens.push(alg.elem(d, coords)?);
    }
    Ideal::generated(alg, &gens)
}

/// Gorenstein algebra from a random dual form in at most `max_vars`
/// variables of degree at most `max_socle`, with two random ideals.
pub fn random_gorenstein_pair<F: Field, R: Rng + ?Sized>(
    f: &F,
    max_vars: usize,
    max_socle: usize,
    rng: &mut R,
) -> Result<(Algebra<F>, Ideal<F>, Ideal<F>)> {
    let n = rng.gen_range(1..=max_vars.max(1));
    let s = rng.gen_range(1..=max_socle.max(1));
    let names = (0..n).map(|i| format!("x{}", i + 1)).collect();
    let alg = loop {
        let form = generic_dual_form(f, n, s, rng);
        if !form.is_zero() {
            break inverse_system(&form, names)?;
        }
    };
    let a = random_ideal(&alg, rng)?;
    let b = random_ideal(&alg, rng)?;
    Ok((alg, a, b))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualitySelftest {
    pub samples: usize,
    pub seed: u64,
    pub passed: usize,
    /// Sample indices with at least one failed identity.
    pub failures: Vec<usize>,
}

pub fn duality_selftest<F: Field>(f: &F, samples: usize, max_vars: usize, max_socle: usize, seed: u64) -> Result<DualitySelftest> {
    let mut out = DualitySelftest { samples, seed, passed: 0, failures: Vec::new() };
    for i in 0..samples {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let (alg, a, b) = random_gorenstein_pair(f, max_vars, max_socle, &mut rng)?;
        if duality_suite(&alg, &a, &b)?.all() {
            out.passed += 1;
        } else {
            out.failures.push(i);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn random_pairs_satisfy_duality() {
        let r = duality_selftest(&PrimeField::new(101).unwrap(), 10, 3, 6, 1).unwrap();
        assert_eq!(r.passed, 10, "{r:?}");
        let r = duality_selftest(&Rationals, 5, 3, 5, 2).unwrap();
        assert_eq!(r.passed, 5, "{r:?}");
    }

    #[test]
    fn fails_off_gorenstein_algebras() {
        let f = PrimeField::new(101).unwrap();
        let x = crate::ring::Poly::var(&f, 2, 0);
        let y = crate::ring::Poly::var(&f, 2, 1);
        let alg = Algebra::from_generators(&f, vec!["x".into(), "y".into()], &[x.pow(2), x.mul(&y), y.pow(2)], 4).unwrap();
        let m = Ideal::maximal(&alg);
        assert!(matches!(duality_suite(&alg, &m, &m), Err(Error::Hypothesis(_))));
    }
}
