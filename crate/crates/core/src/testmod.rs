//! Sampled evidence that a module detects freeness through Tor: annihilation
//! checks, Tor probes against random non-free modules, and Matlis checks.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::complexes::homology::{matlis_check, tor_dims, tor_from_resolution};
use crate::complexes::resolution::map_vanishes;
use crate::complexes::{polys_to_elem, FpModule, FreeModule, GradedDims, GradedMap, Submodule};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::ring::monomial::monomials_of_degree;
use crate::ring::{Algebra, Poly};

/// Whether `m^power · T = 0`, checked on every generator and every monomial
/// of degree `power`.
pub fn check_annihilation<F: Field>(alg: &Algebra<F>, t: &FpModule<F>, power: usize) -> Result<bool> {
    let f = alg.field();
    let n = alg.nvars();
    let rels = Submodule::image(alg, &t.pres)?;
    let gens = &t.pres.target;
    for (j, &tw) in gens.twists.iter().enumerate() {
        let d = tw + power as i64;
        for m in monomials_of_degree(n, power) {
            let mut col = vec![Poly::zero(f, n); gens.rank()];
            col[j] = Poly::monomial(f, n, m, f.one());
            let v = polys_to_elem(alg, gens, d, &col)?;
            if !v.is_zero(f) && !rels.contains(&v) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `Tor_i(M, T)` for `1 <= i <= bound`, stopping at the first nonzero one.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TorProbeResult {
    pub bound: usize,
    pub first_nonvanishing: Option<usize>,
    /// Graded dimensions of `Tor_0 .. Tor_depth` at the last depth computed.
    pub dims: Vec<GradedDims>,
}

pub fn tor_probe<F: Field>(alg: &Algebra<F>, t: &FpModule<F>, m: &FpModule<F>, bound: usize) -> Result<TorProbeResult> {
    let mut depth = 1.min(bound.max(1));
    loop {
        let res = m.resolve(alg, depth + 1)?;
        let dims = tor_from_resolution(alg, &res, t, depth)?;
        let first = (1..=depth).find(|&i| dims.get(i).is_some_and(|d| !d.is_empty()));
        let finite = res.modules().len() <= depth;
        if first.is_some() || depth >= bound || finite {
            return Ok(TorProbeResult { bound, first_nonvanishing: first, dims });
        }
        depth = (depth * 2).min(bound);
    }
}

/// Default probe bound `2·(socle degree) + 2`.
pub fn default_bound<F: Field>(alg: &Algebra<F>) -> usize {
    2 * alg.top() + 2
}

/// Random graded module with one or two generators and a nonzero
/// presentation matrix whose entries all lie in the maximal ideal, so it is
/// minimally presented and not free.
pub fn random_module<F: Field, R: Rng + ?Sized>(alg: &Algebra<F>, rng: &mut R) -> Result<FpModule<F>> {
    let f = alg.field();
    let n = alg.nvars();
    let top = alg.top() as i64;
    loop {
        let ngens = rng.gen_range(1..=2usize);
        let gens: Vec<i64> = (0..ngens).map(|_| rng.gen_range(0..=1i64)).collect();
        let hi = *gens.iter().max().unwrap();
        let lo = *gens.iter().min().unwrap();
        let nrels = rng.gen_range(1..=2usize);
        let rels: Vec<i64> = (0..nrels).map(|_| hi + rng.gen_range(1..=2i64).min((top + lo - hi).max(1))).collect();
        let mut m = GradedMap::zero(f, n, FreeModule::new(rels.clone()), FreeModule::new(gens.clone()));
        for (c, &rt) in rels.iter().enumerate() {
            for (r, &gt) in gens.iter().enumerate() {
                let e = rt - gt;
                if e < 1 || e > top {
                    continue;
                }
                let e = e as usize;
                let coords: Vec<F::Elem> = (0..alg.dim(e)).map(|_| f.random(rng)).collect();
                m.entries[r][c] = alg.lift(&alg.elem(e, coords)?);
            }
        }
        if !map_vanishes(alg, &m)? {
            return Ok(FpModule::new(m));
        }
    }
}

fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Outcome of probing a candidate test module against random non-free modules.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FalsifierReport {
    pub samples: usize,
    pub seed: u64,
    pub bound: usize,
    pub caught: usize,
    /// Indices of samples with all probed Tor groups zero.
    pub counterexamples: Vec<usize>,
    /// How many samples were first caught at each homological degree.
    pub first_index_histogram: BTreeMap<usize, usize>,
}

impl FalsifierReport {
    pub fn clean(&self) -> bool {
        self.counterexamples.is_empty() && self.caught == self.samples
    }
}

pub fn proj_test_falsifier<F: Field>(
    alg: &Algebra<F>,
    t: &FpModule<F>,
    samples: usize,
    bound: usize,
    seed: u64,
) -> Result<FalsifierReport> {
    let residue = FpModule::residue_field(alg.field(), alg.nvars());
    let outcomes: Vec<Result<Option<usize>>> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(seed, i as u64);
            let m = random_module(alg, &mut rng)?;
            // Non-free: a minimal relation shows up in Tor_1(M, k).
            if tor_dims(alg, &m, &residue, 1)?[1].is_empty() {
                return Err(Error::Invariant("random module came out free".into()));
            }
            Ok(tor_probe(alg, t, &m, bound)?.first_nonvanishing)
        })
        .collect();
    let mut report = FalsifierReport {
        samples,
        seed,
        bound,
        caught: 0,
        counterexamples: Vec::new(),
        first_index_histogram: BTreeMap::new(),
    };
    for (i, o) in outcomes.into_iter().enumerate() {
        match o? {
            Some(d) => {
                report.caught += 1;
                *report.first_index_histogram.entry(d).or_insert(0) += 1;
            }
            None => report.counterexamples.push(i),
        }
    }
    Ok(report)
}

/// Matlis comparison `dim Ext^i(M, R) = dim Tor_i(M, ω)` on random modules.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MatlisReport {
    pub samples: usize,
    pub seed: u64,
    pub max_index: usize,
    pub agreed: usize,
    pub failures: Vec<usize>,
}

pub fn matlis_sampler<F: Field>(
    alg: &Algebra<F>,
    omega: &FpModule<F>,
    shift: i64,
    samples: usize,
    max_index: usize,
    seed: u64,
) -> Result<MatlisReport> {
    let outcomes: Vec<Result<bool>> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(seed, i as u64);
            let m = random_module(alg, &mut rng)?;
            Ok(matlis_check(alg, &m, omega, shift, max_index)?.agree)
        })
        .collect();
    let mut report = MatlisReport { samples, seed, max_index, agreed: 0, failures: Vec::new() };
    for (i, o) in outcomes.into_iter().enumerate() {
        if o? {
            report.agreed += 1;
        } else {
            report.failures.push(i);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::ideal::Ideal;

    fn ring() -> (PrimeField, Algebra<PrimeField>) {
        let f = PrimeField::new(101).unwrap();
        let g = [Poly::var(&f, 2, 0).pow(3), Poly::var(&f, 2, 1).pow(3)];
        let s = Algebra::from_generators(&f, vec!["x".into(), "y".into()], &g, 6).unwrap();
        (f, s)
    }

    #[test]
    fn residue_field_is_killed_by_the_maximal_ideal() {
        let (f, s) = ring();
        let k = FpModule::residue_field(&f, 2);
        assert!(check_annihilation(&s, &k, 1).unwrap());
        let free = FpModule::free(&f, 2, FreeModule::new(vec![0]));
        assert!(!check_annihilation(&s, &free, 4).unwrap());
        assert!(check_annihilation(&s, &free, 5).unwrap());
    }

    #[test]
    fn free_module_has_no_tor() {
        let (f, s) = ring();
        let k = FpModule::residue_field(&f, 2);
        let free = FpModule::free(&f, 2, FreeModule::new(vec![0, 1]));
        let p = tor_probe(&s, &k, &free, 4).unwrap();
        assert_eq!(p.first_nonvanishing, None);
        let p = tor_probe(&s, &k, &k, 4).unwrap();
        assert_eq!(p.first_nonvanishing, Some(1));
    }

    #[test]
    fn residue_field_catches_every_sample() {
        let (f, s) = ring();
        let k = FpModule::residue_field(&f, 2);
        let r = proj_test_falsifier(&s, &k, 20, default_bound(&s), 3).unwrap();
        assert!(r.clean());
        assert_eq!(r.first_index_histogram.get(&1), Some(&20));
    }

    #[test]
    fn tor_is_symmetric_on_samples() {
        let (f, s) = ring();
        let x = Poly::var(&f, 2, 0);
        let t = FpModule::cyclic(&f, 2, &[x.pow(2), Poly::var(&f, 2, 1)]).unwrap();
        for i in 0..5 {
            let mut rng = sample_rng(11, i);
            let m = random_module(&s, &mut rng).unwrap();
            assert_eq!(tor_dims(&s, &m, &t, 2).unwrap(), tor_dims(&s, &t, &m, 2).unwrap());
        }
    }

    #[test]
    fn matlis_agrees_on_a_teter_ring() {
        let (_, s) = ring();
        let k = Ideal::maximal(&s);
        let j = k.annihilator(&s).unwrap();
        let r = s.quotient_by(&j.mingens(&s)).unwrap();
        let omega = FpModule::ideal(&s, &k.lifted_gens(&s)).unwrap();
        let rep = matlis_sampler(&r, &omega, s.top() as i64, 6, 3, 5).unwrap();
        assert_eq!(rep.agreed, 6, "{rep:?}");
    }
}
