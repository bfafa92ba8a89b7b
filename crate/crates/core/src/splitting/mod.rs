//! Splitting witnesses for second syzygies of canonical modules, and their
//! verification by per-degree subspace arithmetic.

mod cone;
pub mod lift;
pub mod ci;
pub mod quadrics;
pub mod teter;

use serde::Serialize;

use crate::complexes::{GradedDims, GradedMap};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::Ideal;
use crate::ring::{graded_lex_cmp, Algebra, Poly, RingElem};

pub use cone::{cone_data, ConeData};
pub use lift::{lift_through, solve_over};

/// A named pass/fail check with a short explanation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Ordered list of checks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Checks(pub Vec<Check>);

impl Checks {
    pub fn push(&mut self, name: &str, passed: bool, detail: impl Into<String>) -> bool {
        self.0.push(Check { name: name.to_string(), passed, detail: detail.into() });
        passed
    }

    pub fn all_passed(&self) -> bool {
        !self.0.is_empty() && self.0.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.0.iter().find(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.0.iter().find(|c| c.name == name)
    }

    pub fn extend(&mut self, other: Checks) {
        self.0.extend(other.0);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplitPath {
    Teter,
    CompleteIntersection,
    FiveQuadrics,
}

impl std::fmt::Display for SplitPath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SplitPath::Teter => "teter",
            SplitPath::CompleteIntersection => "complete-intersection",
            SplitPath::FiveQuadrics => "five-quadrics",
        };
        f.write_str(s)
    }
}

/// A term as `(coefficient, exponent vector)`.
pub type TermJson = (String, Vec<u32>);
pub type PolyJson = Vec<TermJson>;

pub fn poly_json<F: Field>(p: &Poly<F>) -> PolyJson {
    let f = p.field();
    let mut keys: Vec<_> = p.terms().keys().copied().collect();
    keys.sort_by(|a, b| graded_lex_cmp(*b, *a, p.nvars()));
    keys.iter()
        .map(|k| (f.format(&p.coeff(*k)), crate::ring::monomial::exps_of(*k, p.nvars())))
        .collect()
}

/// Entries of a map, row by row.
pub fn map_json<F: Field>(m: &GradedMap<F>) -> Vec<Vec<PolyJson>> {
    m.entries.iter().map(|row| row.iter().map(poly_json).collect()).collect()
}

/// Named witness objects of a certificate, already in serializable form.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Witnesses {
    pub delta: Option<PolyJson>,
    pub delta_scalar: Option<String>,
    pub maps: Vec<(String, Vec<Vec<PolyJson>>)>,
    pub column_c: Option<Vec<PolyJson>>,
    pub teter: Option<teter::TeterWitnessJson>,
    pub normalization: Option<quadrics::NormalizationJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SplittingCertificate {
    pub path: SplitPath,
    pub valid: bool,
    pub witnesses: Witnesses,
    /// Hilbert function of the claimed summand, by degree.
    pub summand_hilbert: GradedDims,
    /// The same, computed independently from the predicted module.
    pub predicted_hilbert: GradedDims,
    pub checks: Checks,
}

impl SplittingCertificate {
    pub fn new(path: SplitPath, witnesses: Witnesses, summand: GradedDims, predicted: GradedDims, checks: Checks) -> Self {
        let valid = checks.all_passed();
        SplittingCertificate { path, valid, witnesses, summand_hilbert: summand, predicted_hilbert: predicted, checks }
    }
}

/// The element `Δ` with `(A : B) = (A, Δ)` and `(A : Δ) = B`, computed in
/// `S = P/A` from `K = B/A`: it lifts the generator of `J = (0 :_S K)`,
/// scaled to be monic in graded-lex order.
pub fn find_delta<F: Field>(s: &Algebra<F>, k: &Ideal<F>) -> Result<(Poly<F>, RingElem<F>)> {
    let j = k.annihilator(s)?;
    let gens = j.mingens(s);
    if gens.len() != 1 {
        return Err(Error::Hypothesis(format!("(A : B)/A needs one generator, found {}", gens.len())));
    }
    let f = s.field();
    let lifted = s.lift(&gens[0]);
    let lead = lifted
        .terms()
        .keys()
        .copied()
        .max_by(|a, b| graded_lex_cmp(*a, *b, s.nvars()))
        .ok_or_else(|| Error::Invariant("zero generator".into()))?;
    let scale = f.inv(&lifted.coeff(lead)).ok_or(Error::DivisionByZero)?;
    let delta = lifted.scale(&scale);
    let elem = s.reduce(&delta)?;
    let jj = Ideal::generated(s, std::slice::from_ref(&elem))?;
    if !jj.same_as(&j) {
        return Err(Error::Invariant("Δ does not generate (A : B)".into()));
    }
    if !jj.annihilator(s)?.same_as(k) {
        return Err(Error::Invariant("(A : Δ) differs from B".into()));
    }
    Ok((delta, elem))
}

/// Whether every product `g·e` of a generator with an entry vanishes in `alg`.
pub fn products_vanish<F: Field>(alg: &Algebra<F>, gens: &[Poly<F>], m: &GradedMap<F>) -> Result<bool> {
    for row in &m.entries {
        for p in row.iter().filter(|p| !p.is_zero()) {
            for g in gens {
                if !alg.reduce(&g.mul(p))?.is_zero(alg.field()) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `m - c·id` entrywise, for square maps.
pub fn minus_scalar_identity<F: Field>(m: &GradedMap<F>, c: &Poly<F>) -> Result<GradedMap<F>> {
    if m.nrows() != m.ncols() {
        return Err(Error::Dimension("expected a square map".into()));
    }
    let mut out = m.clone();
    for i in 0..m.nrows() {
        out.entries[i][i] = out.entries[i][i].sub(c);
    }
    Ok(out)
}

pub(crate) fn shift_dims(h: &GradedDims, by: i64) -> GradedDims {
    h.iter().map(|(d, n)| (d + by, *n)).collect()
}

pub(crate) fn ideal_hilbert(hf: &[usize]) -> GradedDims {
    hf.iter().enumerate().filter(|(_, &n)| n > 0).map(|(d, &n)| (d as i64, n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn delta_for_maximal_ideal_is_socle() {
        let f = PrimeField::new(7).unwrap();
        let g = [Poly::var(&f, 2, 0).pow(3), Poly::var(&f, 2, 1).pow(3)];
        let s = Algebra::from_generators(&f, vec!["x".into(), "y".into()], &g, 6).unwrap();
        let m = Ideal::maximal(&s);
        let (delta, _) = find_delta(&s, &m).unwrap();
        let x = Poly::var(&f, 2, 0);
        let y = Poly::var(&f, 2, 1);
        assert_eq!(delta, x.pow(2).mul(&y.pow(2)));
    }
}
