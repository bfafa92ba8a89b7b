//! Case analysis of `R = S/J` by the invariants of `K = (0 : J)`, dispatch to
//! a splitting path, and assembly of the G-regularity evidence chain.

use serde::Serialize;

use crate::complexes::{FpModule, FreeModule, GradedMap};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::{v_of, Ideal};
use crate::ring::{Algebra, Poly};
use crate::splitting::quadrics::{normalize_problem, normalized_delta, pfaffian_maps};
use crate::splitting::{ci, quadrics, teter, SplitPath, SplittingCertificate};
use crate::testmod::{check_annihilation, default_bound, proj_test_falsifier, FalsifierReport};

/// Case labels of the classification, each fixed by its defining conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    /// `k = 0`.
    A,
    /// `2 <= k = c - 1`.
    B,
    /// `k = 1`.
    C,
    /// `(k, c) = (2, 4)` and `n^3 ⊆ nK`.
    D,
    /// `(k, c) = (2, 4)` and `n^3 ⊄ nK`.
    E,
    /// `(k, c) = (2, 5)`.
    F,
    /// `(k, c) = (3, 5)`, `mgd(K) <= 2`, one-dimensional socle of `S/K`.
    G,
    /// `(k, c) = (3, 5)` and `mgd(K) >= 3`.
    H,
    /// `(k, c) = (3, 5)` and socle of `S/K` of dimension at least two.
    I,
}

impl Case {
    /// All cases, in dispatch order.
    pub const ORDER: [Case; 9] = [Case::A, Case::C, Case::B, Case::D, Case::E, Case::F, Case::H, Case::I, Case::G];

    pub fn letter(self) -> char {
        match self {
            Case::A => 'a',
            Case::B => 'b',
            Case::C => 'c',
            Case::D => 'd',
            Case::E => 'e',
            Case::F => 'f',
            Case::G => 'g',
            Case::H => 'h',
            Case::I => 'i',
        }
    }

    pub fn from_letter(c: char) -> Option<Case> {
        Case::ORDER.iter().copied().find(|k| k.letter() == c.to_ascii_lowercase())
    }

    pub fn path(self) -> SplitPath {
        match self {
            Case::C | Case::D => SplitPath::CompleteIntersection,
            Case::G => SplitPath::FiveQuadrics,
            _ => SplitPath::Teter,
        }
    }

    /// Lower bound on `v(S)` under which the case is known to apply.
    pub fn required_v(self, colength: usize) -> usize {
        match self {
            Case::A => 0,
            Case::C => 2 * colength,
            Case::B | Case::H | Case::I => 3,
            Case::E | Case::F => 4,
            Case::D | Case::G => 5,
        }
    }
}

impl std::fmt::Display for Case {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationReport {
    /// Minimal number of generators of `n/K`.
    pub k: usize,
    /// Colength `c = λ(S/K) = λ(J)`.
    pub colength: usize,
    pub v: usize,
    /// Top degree of `S/K`.
    pub top_degree: usize,
    pub quotient_hilbert: Vec<usize>,
    pub socle_dim: usize,
    pub max_generator_degree: usize,
    /// Every case whose conditions hold, in dispatch order.
    pub applicable: Vec<Case>,
    pub case: Case,
    pub path: SplitPath,
    pub required_v: usize,
    pub threshold_met: bool,
}

/// `K = (0 : J)` from `J`, with the input checks shared by every command.
pub fn canonical_ideal<F: Field>(s: &Algebra<F>, j: &Ideal<F>) -> Result<Ideal<F>> {
    if s.is_truncated() || !s.is_gorenstein() {
        return Err(Error::Hypothesis("S must be a Gorenstein Artinian algebra".into()));
    }
    if s.embedding_dim() < 2 {
        return Err(Error::Hypothesis("S needs embedding dimension at least two".into()));
    }
    if j.is_zero() {
        return Err(Error::Hypothesis("J = 0 makes R = S Gorenstein, which is excluded".into()));
    }
    if j.is_unit() {
        return Err(Error::Hypothesis("J must be a proper ideal".into()));
    }
    let k = j.annihilator(s)?;
    if k.num_mingens(s) == 1 {
        return Err(Error::Hypothesis("K is principal, so R is Gorenstein, which is excluded".into()));
    }
    Ok(k)
}

pub fn classify<F: Field>(s: &Algebra<F>, j: &Ideal<F>) -> Result<ClassificationReport> {
    let kk = canonical_ideal(s, j)?;
    let n = s.nvars();
    let colength = kk.colength(s);
    if colength > 5 {
        return Err(Error::OutOfScope(format!("colength {colength} exceeds 5")));
    }
    let k = s.embedding_dim() - kk.piece(1).dim();
    if k + 1 > colength {
        return Err(Error::Invariant(format!("k + 1 <= c fails: k = {k}, c = {colength}")));
    }
    let hf = kk.quotient_hf(s);
    let top_degree = kk.quotient_topdeg(s).unwrap_or(0);
    let socle_dim: usize = kk.quotient_socle_dims(s)?.iter().sum();
    let mgd = kk.mgd(s).unwrap_or(0);
    let m = Ideal::maximal(s);
    let cube_in_nk = || -> Result<bool> { Ok(Ideal::maximal_power(s, 3).is_subset(&m.product(s, &kk)?)) };
    let mut applicable = Vec::new();
    for case in Case::ORDER {
        let holds = match case {
            Case::A => k == 0,
            Case::C => k == 1,
            Case::B => k >= 2 && k + 1 == colength,
            Case::D => (k, colength) == (2, 4) && cube_in_nk()?,
            Case::E => (k, colength) == (2, 4) && !cube_in_nk()?,
            Case::F => (k, colength) == (2, 5),
            Case::H => (k, colength) == (3, 5) && mgd >= 3,
            Case::I => (k, colength) == (3, 5) && socle_dim >= 2,
            Case::G => (k, colength) == (3, 5) && mgd <= 2 && socle_dim == 1,
        };
        if holds {
            applicable.push(case);
        }
    }
    let case = *applicable.first().ok_or_else(|| Error::OutOfScope(format!("no case for k = {k}, c = {colength} in {n} variables")))?;
    let v = v_of(s);
    let required_v = case.required_v(colength);
    Ok(ClassificationReport {
        k,
        colength,
        v,
        top_degree,
        quotient_hilbert: hf,
        socle_dim,
        max_generator_degree: mgd,
        applicable,
        case,
        path: case.path(),
        required_v,
        threshold_met: v >= required_v,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum Verdict {
    GRegular,
    Incomplete,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::GRegular => "G-REGULAR",
            Verdict::Incomplete => "INCOMPLETE",
        })
    }
}

/// Evidence that the split-off summand is a test module for freeness.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TestModuleEvidence {
    /// `residue field`, `R/BR` or `B'/BB'`.
    pub module: String,
    /// `(power, holds)` for the annihilation hypothesis used, if any.
    pub annihilation: Option<(usize, bool)>,
    pub v_of_r: usize,
    pub falsifier: FalsifierReport,
    /// True when the test-module property is supported by sampling only.
    pub statement_level: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertifyOptions {
    pub samples: usize,
    pub seed: u64,
    pub bound: Option<usize>,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { samples: 20, seed: 0, bound: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GRegularityReport {
    pub classification: ClassificationReport,
    pub certificate: SplittingCertificate,
    pub test_module: TestModuleEvidence,
    pub verdict: Verdict,
    /// The first unverified link when the verdict is incomplete.
    pub missing: Option<String>,
}

fn lifted<F: Field>(s: &Algebra<F>, k: &Ideal<F>) -> Vec<Poly<F>> {
    k.lifted_gens(s)
}

/// `B'/BB' = B_1'/(b2'(B_2') + B·B_1')` as a module over `alg`, in the
/// normalized coordinates.
fn conormal_module<F: Field>(alg: &Algebra<F>, u: &[F::Elem; 3], b_gens: &[Poly<F>]) -> Result<FpModule<F>> {
    let f = alg.field();
    let n = alg.nvars();
    let [_, b2, _] = pfaffian_maps(f, n, u)?;
    let gens = b2.target.clone();
    let mut rel_twists = b2.source.twists.clone();
    let mut cols: Vec<Vec<Poly<F>>> = (0..5).map(|c| b2.entries.iter().map(|row| row[c].clone()).collect()).collect();
    for a in 0..5 {
        for g in b_gens {
            let mut col = vec![Poly::zero(f, n); 5];
            col[a] = g.clone();
            rel_twists.push(2 + g.degree().unwrap_or(0) as i64);
            cols.push(col);
        }
    }
    let entries: Vec<Vec<Poly<F>>> = (0..5).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    Ok(FpModule::new(GradedMap::new(f, n, FreeModule::new(rel_twists), gens, entries)?))
}

/// Runs the classification, the splitting certificate of the chosen path and
/// the test-module checks, and combines them into a verdict.
pub fn certify_g_regular<F: Field>(s: &Algebra<F>, j: &Ideal<F>, opts: &CertifyOptions) -> Result<GRegularityReport> {
    let report = classify(s, j)?;
    let k = j.annihilator(s)?;
    let f = s.field();
    let n = s.nvars();
    let (certificate, ring, t, module, annihilation, statement_level) = match report.path {
        SplitPath::Teter => {
            let cert = teter::teter_certificate(s, &k)?;
            let r = s.quotient_by(&j.mingens(s))?;
            let t = FpModule::residue_field(f, n);
            let ann = check_annihilation(&r, &t, 1)?;
            (cert, r, t, "residue field", Some((1, ann)), false)
        }
        SplitPath::CompleteIntersection => {
            let cert = ci::ci_certificate(s, &k)?;
            let r = s.quotient_by(&j.mingens(s))?;
            let t = FpModule::cyclic(f, n, &lifted(s, &k))?;
            (cert, r, t, "R/BR", None, true)
        }
        SplitPath::FiveQuadrics => {
            let cert = quadrics::quadrics_certificate(s, &k)?;
            let np = normalize_problem(s, &k)?;
            let r = np.alg.quotient_by(&[normalized_delta(&np)?])?;
            let t = conormal_module(&r, &np.units, &lifted(&np.alg, &np.ideal))?;
            let ann = check_annihilation(&r, &t, 2)?;
            (cert, r, t, "B'/BB'", Some((2, ann)), false)
        }
    };
    let v_of_r = v_of(&ring);
    let bound = opts.bound.unwrap_or_else(|| default_bound(&ring));
    let falsifier = proj_test_falsifier(&ring, &t, opts.samples, bound, opts.seed)?;
    let missing = if !certificate.valid {
        Some(format!("splitting certificate failed: {}", certificate.checks.first_failure().map_or("no checks", |c| c.name.as_str())))
    } else if !report.threshold_met {
        Some(format!("v(S) = {} is below the case bound {}", report.v, report.required_v))
    } else if annihilation.is_some_and(|(_, ok)| !ok) {
        Some("test module fails its annihilation hypothesis".into())
    } else if report.path == SplitPath::FiveQuadrics && v_of_r < 3 {
        Some(format!("v(R) = {v_of_r} is below 3"))
    } else if !falsifier.clean() {
        Some(format!("falsifier found {} counterexamples", falsifier.counterexamples.len()))
    } else {
        None
    };
    let verdict = if missing.is_none() { Verdict::GRegular } else { Verdict::Incomplete };
    Ok(GRegularityReport {
        classification: report,
        certificate,
        test_module: TestModuleEvidence { module: module.into(), annihilation, v_of_r, falsifier, statement_level },
        verdict,
        missing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::fixtures::fixture;

    #[test]
    fn every_fixture_certifies() {
        let f = PrimeField::new(101).unwrap();
        for case in Case::ORDER {
            let pr = fixture(&f, case, 0).unwrap().build(&f).unwrap();
            let rep = certify_g_regular(&pr.s, &pr.j, &CertifyOptions { samples: 8, ..Default::default() }).unwrap();
            eprintln!("{case}: {} {:?} {:?}", rep.verdict, rep.missing, rep.certificate.summand_hilbert);
            assert!(rep.certificate.valid, "case {case}: {:?}", rep.certificate.checks.first_failure());
            assert_eq!(rep.verdict, Verdict::GRegular, "case {case}: {:?}", rep.missing);
        }
    }

    #[test]
    fn gorenstein_quotients_are_rejected() {
        let f = PrimeField::new(101).unwrap();
        let pr = fixture(&f, Case::A, 0).unwrap().build(&f).unwrap();
        assert!(matches!(classify(&pr.s, &Ideal::zero(&pr.s)), Err(Error::Hypothesis(_))));
        let x = Ideal::from_polys(&pr.s, &[Poly::var(&f, 2, 0)]).unwrap();
        assert!(matches!(classify(&pr.s, &x), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn letters_round_trip() {
        for case in Case::ORDER {
            assert_eq!(Case::from_letter(case.letter()), Some(case));
        }
        assert_eq!(Case::from_letter('z'), None);
    }
}
