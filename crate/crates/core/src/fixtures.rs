//! One small problem per classification case. Seed 0 gives the fixture in
//! its native coordinates; any other seed applies a random invertible linear
//! change of coordinates to every polynomial.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::classify::Case;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::{generic_dual_form, inverse_system};
use crate::io::{ProblemFile, RatPoly};
use crate::linalg::Matrix;
use crate::ring::{Algebra, Poly};
use crate::splitting::lift::defining_generators;

/// Stream seed for the generic octic behind case g.
const OCTIC_SEED: u64 = 7;
const OCTIC_HILBERT: [usize; 9] = [1, 3, 6, 10, 15, 10, 6, 3, 1];

fn names(n: usize) -> Vec<String> {
    ["x", "y", "z"].iter().take(n).map(|s| s.to_string()).collect()
}

/// A generic ternary octic form with the expected Hilbert function of its
/// apolar algebra, drawn deterministically.
pub fn generic_octic<F: Field>(f: &F) -> Result<(Poly<F>, Algebra<F>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(OCTIC_SEED);
    for _ in 0..1000 {
        let form = generic_dual_form(f, 3, 8, &mut rng);
        let s = inverse_system(&form, names(3))?;
        if s.hilbert_function() == OCTIC_HILBERT {
            return Ok((form, s));
        }
    }
    Err(Error::Invariant("no octic with the generic Hilbert function found".into()))
}

/// Random invertible linear substitution `x_j -> sum_i m_ij x_i`.
fn random_change<F: Field>(f: &F, n: usize, seed: u64) -> Result<Vec<Poly<F>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let rows: Vec<Vec<F::Elem>> = (0..n).map(|_| (0..n).map(|_| f.random(&mut rng)).collect()).collect();
        let m = Matrix::from_rows(f, n, rows.clone())?;
        if !f.is_zero(&m.determinant()?) {
            return Ok(rows.iter().map(|r| Poly::linear(f, r)).collect());
        }
    }
}

pub fn fixture<F: Field>(f: &F, case: Case, seed: u64) -> Result<ProblemFile> {
    let n = if matches!(case, Case::G | Case::H | Case::I) { 3 } else { 2 };
    let v = |i| Poly::var(f, n, i);
    let mono = |e: &[usize]| e.iter().enumerate().fold(Poly::constant(f, n, f.one()), |acc, (i, &k)| acc.mul(&v(i).pow(k)));
    let cube = || {
        crate::ring::monomial::monomials_of_degree(n, 3)
            .into_iter()
            .map(|k| Poly::monomial(f, n, k, f.one()))
            .collect::<Vec<_>>()
    };
    let powers = |e: &[usize]| e.iter().enumerate().map(|(i, &k)| v(i).pow(k)).collect::<Vec<_>>();
    let mut dual = None;
    let (a, k): (Vec<Poly<F>>, Vec<Poly<F>>) = match case {
        Case::A => (powers(&[3, 3]), vec![v(0), v(1)]),
        Case::B => (powers(&[3, 3]), vec![mono(&[2, 0]), mono(&[1, 1]), mono(&[0, 2])]),
        Case::C => (powers(&[5, 4]), vec![v(1), v(0).pow(2)]),
        Case::D => (powers(&[5, 5]), vec![v(0).pow(2), v(1).pow(2)]),
        Case::E => (powers(&[4, 4]), vec![mono(&[2, 0]), mono(&[1, 1]), mono(&[0, 3])]),
        Case::F => {
            let mut k = vec![mono(&[1, 1])];
            k.extend(cube());
            (powers(&[4, 4]), k)
        }
        Case::H => {
            let mut k = vec![mono(&[2, 0, 0]), mono(&[1, 1, 0]), mono(&[1, 0, 1]), mono(&[0, 2, 0]), mono(&[0, 1, 1])];
            k.extend(cube());
            (powers(&[3, 3, 4]), k)
        }
        Case::I => (
            powers(&[3, 3, 3]),
            vec![mono(&[2, 0, 0]), mono(&[1, 1, 0]), mono(&[1, 0, 1]), mono(&[0, 2, 0]), mono(&[0, 0, 2])],
        ),
        Case::G => {
            let (form, s) = generic_octic(f)?;
            let one = f.one();
            let k = crate::splitting::quadrics::canonical_quadrics(f, 3, &[one.clone(), one.clone(), one]);
            if seed == 0 {
                dual = Some(form);
                (Vec::new(), k)
            } else {
                (defining_generators(&s), k)
            }
        }
    };
    let (a, k) = if seed == 0 {
        (a, k)
    } else {
        let change = random_change(f, n, seed)?;
        (a.iter().map(|p| p.substitute(&change)).collect(), k.iter().map(|p| p.substitute(&change)).collect())
    };
    let rat = |ps: &[Poly<F>]| ps.iter().map(RatPoly::from_poly).collect::<Vec<_>>();
    Ok(ProblemFile {
        field: f.spec(),
        vars: names(n),
        truncate: None,
        seed: Some(seed),
        a: rat(&a),
        dual: dual.as_ref().map(RatPoly::from_poly),
        j: None,
        k: Some(rat(&k)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify;
    use crate::field::PrimeField;

    #[test]
    fn every_fixture_lands_in_its_case() {
        let f = PrimeField::new(101).unwrap();
        for case in Case::ORDER {
            for seed in [0, 3] {
                let p = fixture(&f, case, seed).unwrap();
                let pr = p.build(&f).unwrap();
                let rep = classify(&pr.s, &pr.j).unwrap();
                assert_eq!(rep.case, case, "seed {seed}: {rep:?}");
                assert!(rep.threshold_met, "case {case} seed {seed}: v = {}", rep.v);
            }
        }
    }

    #[test]
    fn fixtures_are_deterministic() {
        let f = PrimeField::new(2).unwrap();
        for case in Case::ORDER {
            assert_eq!(fixture(&f, case, 5).unwrap(), fixture(&f, case, 5).unwrap());
        }
    }
}
