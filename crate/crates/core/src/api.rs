//! Field-erased entry points shared by the command line and the C interface.
//! Each takes a parsed problem and picks the field from its `field` line.

use serde::Serialize;

use crate::classify::{certify_g_regular, classify, Case, CertifyOptions, ClassificationReport, GRegularityReport};
use crate::complexes::resolution::BettiEntry;
use crate::complexes::FpModule;
use crate::error::{Error, Result};
use crate::field::{parse_rational, Field, FieldSpec, PrimeField, Rationals};
use crate::fixtures::fixture;
use crate::ideal::{duality_selftest, DualitySelftest};
use crate::io::ProblemFile;
use crate::splitting::quadrics::{alpha_report, pfaffian_betti, square_is_fourth_power, AlphaReport};

/// Kernel dimension of the α-system quoted in the literature, reported next
/// to the computed value.
pub const ALPHA_REFERENCE_KERNEL: usize = 86;

macro_rules! over_field {
    ($spec:expr, $f:ident => $body:expr) => {
        match $spec {
            FieldSpec::Rational => {
                let $f = &Rationals;
                $body
            }
            FieldSpec::Prime(p) => {
                let $f = &PrimeField::new(p)?;
                $body
            }
        }
    };
}

pub fn analyze(p: &ProblemFile) -> Result<ClassificationReport> {
    over_field!(p.field, f => {
        let pr = p.build(f)?;
        classify(&pr.s, &pr.j)
    })
}

pub fn certify(p: &ProblemFile, opts: &CertifyOptions) -> Result<GRegularityReport> {
    over_field!(p.field, f => {
        let pr = p.build(f)?;
        certify_g_regular(&pr.s, &pr.j, opts)
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResolveOutcome {
    pub steps: usize,
    pub ranks: Vec<usize>,
    pub betti: Vec<BettiEntry>,
    /// Internal degree through which every step is certified, if finite.
    pub valid_degree_bound: Option<i64>,
    pub betti_text: String,
}

/// Minimal resolution of the canonical module `K` over `R = S/J`.
pub fn resolve(p: &ProblemFile, steps: usize) -> Result<ResolveOutcome> {
    over_field!(p.field, f => {
        let pr = p.build(f)?;
        let r = pr.s.quotient_by(&pr.j.mingens(&pr.s))?;
        let omega = FpModule::ideal(&pr.s, &pr.k.lifted_gens(&pr.s))?;
        let res = omega.resolve(&r, steps)?;
        let betti = res.betti();
        Ok(ResolveOutcome {
            steps,
            ranks: res.ranks(),
            betti: betti.entries(),
            valid_degree_bound: (res.valid_degree_bound != i64::MAX).then_some(res.valid_degree_bound),
            betti_text: betti.to_text(),
        })
    })
}

pub fn duality(spec: FieldSpec, samples: usize, max_vars: usize, max_socle: usize, seed: u64) -> Result<DualitySelftest> {
    over_field!(spec, f => duality_selftest(f, samples, max_vars, max_socle, seed))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuadricsOutcome {
    pub units: Vec<String>,
    pub alpha: AlphaReport,
    pub alpha_reference_kernel_dim: usize,
    pub quotient_twists: Vec<Vec<i64>>,
    pub square_quotient_twists: Vec<Vec<i64>>,
    pub square_is_fourth_power: bool,
}

impl QuadricsOutcome {
    /// Structural checks only; the reference kernel dimension is reported,
    /// not enforced.
    pub fn passed(&self) -> bool {
        self.alpha.table_solves && self.alpha.kernel_is_null_homotopic && self.square_is_fourth_power
    }
}

fn units<F: Field>(f: &F, text: &str) -> Result<[F::Elem; 3]> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(Error::Config("units take three comma-separated values".into()));
    }
    let mut u = Vec::new();
    for p in parts {
        let q = parse_rational(p).map_err(|_| Error::Config(format!("bad unit `{p}`")))?;
        let x = f.from_rational(&q)?;
        if f.is_zero(&x) {
            return Err(Error::Config("units must be nonzero".into()));
        }
        u.push(x);
    }
    Ok(u.try_into().expect("three units"))
}

/// Pfaffian and homotopy-table checks for the quadrics with units `u1,u2,u3`.
pub fn quadrics_verify(spec: FieldSpec, units_text: &str) -> Result<QuadricsOutcome> {
    over_field!(spec, f => {
        let u = units(f, units_text)?;
        let (quotient, square) = pfaffian_betti(f, &u)?;
        Ok(QuadricsOutcome {
            units: u.iter().map(|x| f.format(x)).collect(),
            alpha: alpha_report(f, &u)?,
            alpha_reference_kernel_dim: ALPHA_REFERENCE_KERNEL,
            quotient_twists: quotient,
            square_quotient_twists: square,
            square_is_fourth_power: square_is_fourth_power(f, &u)?,
        })
    })
}

pub fn fixture_problem(spec: FieldSpec, case: char, seed: u64) -> Result<ProblemFile> {
    let case = Case::from_letter(case).ok_or_else(|| Error::Config(format!("unknown case `{case}`")))?;
    over_field!(spec, f => fixture(f, case, seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dispatch_matches_direct_calls() {
        let p = fixture_problem(FieldSpec::Prime(101), 'e', 0).unwrap();
        assert_eq!(analyze(&p).unwrap().case, Case::E);
        let mut q = p.clone();
        q.field = FieldSpec::Rational;
        assert_eq!(analyze(&q).unwrap().case, Case::E);
        let r = resolve(&p, 2).unwrap();
        assert_eq!(r.ranks.len(), 3);
    }

    #[test]
    fn units_are_validated() {
        assert!(quadrics_verify(FieldSpec::Prime(5), "1,0,1").is_err());
        assert!(quadrics_verify(FieldSpec::Prime(5), "1,1").is_err());
    }
}
