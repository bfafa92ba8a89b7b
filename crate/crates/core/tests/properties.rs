use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use trefl::classify::{classify, Case};
use trefl::field::{Field, PrimeField};
use trefl::fixtures::fixture;
use trefl::ideal::{duality_suite, generic_dual_form, inverse_system, random_gorenstein_pair, random_ideal};
use trefl::io::{ProblemFile, RatPoly};
use trefl::linalg::Matrix;

const PRIMES: [u32; 5] = [2, 3, 5, 101, 2_147_483_647];

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn names(n: usize) -> Vec<String> {
    ["x", "y", "z"].iter().take(n).map(|s| s.to_string()).collect()
}

fn arb_ratpoly(nvars: usize) -> impl Strategy<Value = RatPoly> {
    prop::collection::vec((prop::collection::vec(0u32..5, nvars), -9i64..10, 1i64..4), 0..6).prop_map(|terms| {
        let mut p = RatPoly::default();
        for (e, n, d) in terms {
            if n != 0 {
                *p.terms.entry(e).or_insert_with(|| rat(0, 1)) += rat(n, d);
            }
        }
        p.terms.retain(|_, c| *c != rat(0, 1));
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn prime_field_is_a_field(pi in 0usize..PRIMES.len(), a in any::<i64>(), b in any::<i64>(), c in any::<i64>()) {
        let f = PrimeField::new(PRIMES[pi]).unwrap();
        let (a, b, c) = (f.from_i64(a), f.from_i64(b), f.from_i64(c));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        if !f.is_zero(&b) {
            prop_assert_eq!(f.div(&f.mul(&a, &b), &b).unwrap(), a.clone());
        }
        prop_assert_eq!(f.add(&a, &f.neg(&a)), f.zero());
    }

    #[test]
    fn reduction_mod_p_is_a_ring_map(pi in 0usize..PRIMES.len(), n1 in -50i64..50, d1 in 1i64..50, n2 in -50i64..50, d2 in 1i64..50) {
        let f = PrimeField::new(PRIMES[pi]).unwrap();
        let (x, y) = (rat(n1, d1), rat(n2, d2));
        if let (Ok(a), Ok(b)) = (f.from_rational(&x), f.from_rational(&y)) {
            prop_assert_eq!(f.from_rational(&(&x + &y)).unwrap(), f.add(&a, &b));
            prop_assert_eq!(f.from_rational(&(&x * &y)).unwrap(), f.mul(&a, &b));
        }
    }

    #[test]
    fn polynomial_text_round_trips(p in arb_ratpoly(3)) {
        let v = names(3);
        let text = p.format(&v);
        prop_assert_eq!(RatPoly::parse(&text, &v, 1).unwrap(), p);
    }

    #[test]
    fn problem_text_and_json_agree(a in prop::collection::vec(arb_ratpoly(2), 1..4), k in prop::collection::vec(arb_ratpoly(2), 1..4), seed in any::<u64>()) {
        let p = ProblemFile {
            field: trefl::field::FieldSpec::Rational,
            vars: names(2),
            truncate: Some(6),
            seed: Some(seed),
            a,
            dual: None,
            j: None,
            k: Some(k),
        };
        let via_text = ProblemFile::parse(&p.to_text()).unwrap();
        let via_json = ProblemFile::parse(&serde_json::to_string(&p.to_json()).unwrap()).unwrap();
        prop_assert_eq!(&via_text, &via_json);
        prop_assert_eq!(via_text, p);
    }

    #[test]
    fn rank_nullity(rows in 1usize..7, cols in 1usize..7, seed in any::<u64>()) {
        let f = PrimeField::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let data: Vec<Vec<_>> = (0..rows).map(|_| (0..cols).map(|_| if rand::Rng::gen_bool(&mut rng, 0.4) { f.zero() } else { f.random(&mut rng) }).collect()).collect();
        let m = Matrix::from_rows(&f, cols, data).unwrap();
        let ker = m.kernel();
        prop_assert_eq!(m.rank() + ker.dim(), cols);
        for v in ker.basis() {
            prop_assert!(m.mul_vec(v).iter().all(|x| f.is_zero(x)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn apolar_algebras_are_gorenstein_with_symmetric_hilbert_function(n in 1usize..4, s in 1usize..7, seed in any::<u64>(), pi in 0usize..4) {
        let f = PrimeField::new(PRIMES[pi]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let form = generic_dual_form(&f, n, s, &mut rng);
        prop_assume!(!form.is_zero());
        let alg = inverse_system(&form, names(n)).unwrap();
        prop_assert!(alg.is_gorenstein());
        let hf = alg.hilbert_function();
        prop_assert_eq!(hf.len(), s + 1);
        let rev: Vec<usize> = hf.iter().rev().copied().collect();
        prop_assert_eq!(hf, rev);
    }

    #[test]
    fn duality_identities_hold(seed in any::<u64>()) {
        let f = PrimeField::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (alg, a, b) = random_gorenstein_pair(&f, 3, 6, &mut rng).unwrap();
        let rep = duality_suite(&alg, &a, &b).unwrap();
        prop_assert!(rep.all(), "{:?}", rep);
    }

    #[test]
    fn annihilator_is_an_involution(seed in any::<u64>()) {
        let f = PrimeField::new(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (alg, _, _) = random_gorenstein_pair(&f, 3, 5, &mut rng).unwrap();
        let i = random_ideal(&alg, &mut rng).unwrap();
        let ann = i.annihilator(&alg).unwrap();
        prop_assert!(ann.annihilator(&alg).unwrap().same_as(&i));
        prop_assert_eq!(i.colength(&alg) + ann.colength(&alg), alg.hilbert_function().iter().sum::<usize>());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn classification_survives_coordinate_changes(ci in 0usize..9, seed in 1u64..1_000_000) {
        let f = PrimeField::new(101).unwrap();
        let case = Case::ORDER[ci];
        let pr = fixture(&f, case, seed).unwrap().build(&f).unwrap();
        prop_assert_eq!(classify(&pr.s, &pr.j).unwrap().case, case);
    }
}
