//! The residue field as a summand of `syz_2` of the canonical module, found
//! from a socle-type element and one entry of a minimal presentation.

use serde::Serialize;

use crate::complexes::fitting::{entry_ideal, fitt1_ideal};
use crate::complexes::resolution::map_is_minimal;
use crate::complexes::{polys_to_elem, FpModule, GradedDims, GradedMap, ModElem, Submodule};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::Ideal;
use crate::ring::{Algebra, Poly, RingElem};

use super::cone::check_direct_sum;
use super::{map_json, poly_json, Checks, PolyJson, SplitPath, SplittingCertificate, Witnesses};

/// `s ∈ (J : n)`, a source generator `column` and a target coordinate `row`
/// with `s · d[row][column]` a minimal generator of `J`.
#[derive(Clone, Debug, PartialEq)]
pub struct TeterWitness<F: Field> {
    pub multiplier: RingElem<F>,
    pub column: usize,
    pub row: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TeterWitnessJson {
    pub multiplier: PolyJson,
    pub column: usize,
    pub row: usize,
    pub generator_of_j: PolyJson,
}

/// Minimal presentation `d: F -> G` of `K` over `S`.
pub fn presentation<F: Field>(s: &Algebra<F>, k: &Ideal<F>) -> Result<GradedMap<F>> {
    Ok(FpModule::ideal(s, &k.lifted_gens(s))?.pres)
}

fn entry_elem<F: Field>(s: &Algebra<F>, d: &GradedMap<F>, row: usize, col: usize) -> Result<Option<RingElem<F>>> {
    let e = d.source.twists[col] - d.target.twists[row];
    let p = &d.entries[row][col];
    if p.is_zero() || e < 0 || e as usize > s.top() {
        return Ok(None);
    }
    let x = s.reduce_in_degree(p, e as usize)?;
    Ok(if x.is_zero(s.field()) { None } else { Some(x) })
}

/// Searches a basis of `(J : n)` against every entry of `d`. The search is
/// exhaustive, so `Err(Hypothesis)` means `(J : n)·I_1(d) ⊆ nJ`.
pub fn teter_witness<F: Field>(s: &Algebra<F>, j: &Ideal<F>, d: &GradedMap<F>) -> Result<TeterWitness<F>> {
    if j.is_zero() || j.is_unit() {
        return Err(Error::Hypothesis("J must be a nonzero proper ideal".into()));
    }
    if !map_is_minimal(s, d)? {
        return Err(Error::Hypothesis("presentation has a unit entry".into()));
    }
    let m = Ideal::maximal(s);
    let colon = j.colon(s, &m)?;
    let nj = m.product(s, j)?;
    for deg in 0..=s.top() {
        for b in colon.piece(deg).basis() {
            let mult = s.elem(deg, b.clone())?;
            for col in 0..d.ncols() {
                for row in 0..d.nrows() {
                    let Some(x) = entry_elem(s, d, row, col)? else { continue };
                    if mult.deg + x.deg > s.top() {
                        continue;
                    }
                    let prod = s.mul(&mult, &x)?;
                    if !nj.contains(&prod) {
                        return Ok(TeterWitness { multiplier: mult, column: col, row });
                    }
                }
            }
        }
    }
    Err(Error::Hypothesis("(J : n)·I_1(d) is contained in nJ".into()))
}

/// The dual reading of the witness condition: `(K : n) ⊄ (nK : I_1(d))`.
pub fn dual_condition<F: Field>(s: &Algebra<F>, k: &Ideal<F>, d: &GradedMap<F>) -> Result<bool> {
    let m = Ideal::maximal(s);
    let kn = k.colon(s, &m)?;
    let i1 = entry_ideal(s, d)?;
    let nk = m.product(s, k)?;
    Ok(!kn.is_subset(&nk.colon(s, &i1)?))
}

/// `Fitt^1(K) = n` and `(K : n) ⊄ (nK : n)`.
pub fn residue_split_hypotheses<F: Field>(s: &Algebra<F>, k: &Ideal<F>) -> Result<(bool, bool)> {
    let m = Ideal::maximal(s);
    let fitt = fitt1_ideal(s, &k.lifted_gens(s))?;
    let kn = k.colon(s, &m)?;
    let nkn = m.product(s, k)?.colon(s, &m)?;
    Ok((fitt.same_as(&m), !kn.is_subset(&nkn)))
}

/// The element `s·e_column` of `F ⊗ R`.
fn witness_elem<F: Field>(r: &Algebra<F>, s: &Algebra<F>, d: &GradedMap<F>, w: &TeterWitness<F>) -> Result<ModElem<F>> {
    let mut col = vec![Poly::zero(s.field(), s.nvars()); d.ncols()];
    col[w.column] = s.lift(&w.multiplier);
    polys_to_elem(r, &d.source, w.multiplier.deg as i64 + d.source.twists[w.column], &col)
}

/// Checks that `R·s·e_column` is a summand of `ker(d ⊗ R)` isomorphic to the
/// residue field; returns the checks and the summand's Hilbert function.
pub fn verify_teter_split<F: Field>(
    s: &Algebra<F>,
    j: &Ideal<F>,
    d: &GradedMap<F>,
    w: &TeterWitness<F>,
) -> Result<(Checks, GradedDims)> {
    let r = s.quotient_by(&j.mingens(s))?;
    let z = Submodule::kernel(&r, d)?;
    let v = witness_elem(&r, s, d, w)?;
    let mut checks = Checks::default();
    let f = r.field();
    let nonzero = checks.push("witness is nonzero in F ⊗ R", !v.is_zero(f), format!("degree {}", v.deg));
    let in_ker = checks.push("witness lies in ker(d ⊗ R)", z.contains(&v), "");
    let mz = z.times_maximal_power(&r, 1)?;
    let minimal = checks.push("witness is a minimal generator", nonzero && in_ker && !mz.contains(&v), "");
    let x = Submodule::generated(&r, &d.source, std::slice::from_ref(&v))?;
    if !minimal {
        return Ok((checks, x.hilbert()));
    }
    let rest = z.mingens_after(&r, std::slice::from_ref(&v))?;
    let y = Submodule::generated(&r, &d.source, &rest[1..])?;
    check_direct_sum(&z, &x, &y, &mut checks)?;
    checks.push("maximal ideal kills the witness", x.total_dim() == 1, format!("R·witness has length {}", x.total_dim()));
    Ok((checks, x.hilbert()))
}

/// Full Teter-path certificate for `S` and `K = (0 : J)`.
pub fn teter_certificate<F: Field>(s: &Algebra<F>, k: &Ideal<F>) -> Result<SplittingCertificate> {
    let j = k.annihilator(s)?;
    let d = presentation(s, k)?;
    let mut checks = Checks::default();
    let (fitt, colon) = residue_split_hypotheses(s, k)?;
    checks.push("Fitt^1(K) = n", fitt, "");
    checks.push("(K : n) not inside (nK : n)", colon, "");
    let found = teter_witness(s, &j, &d);
    let dual = dual_condition(s, k, &d)?;
    checks.push("dual formulation agrees", dual == found.is_ok(), format!("dual condition holds: {dual}"));
    let w = match found {
        Ok(w) => w,
        Err(Error::Hypothesis(msg)) => {
            checks.push("witness found", false, msg);
            return Ok(SplittingCertificate::new(SplitPath::Teter, Witnesses::default(), GradedDims::new(), GradedDims::new(), checks));
        }
        Err(e) => return Err(e),
    };
    let (more, hf) = verify_teter_split(s, &j, &d, &w)?;
    checks.extend(more);
    let v_deg = w.multiplier.deg as i64 + d.source.twists[w.column];
    let predicted: GradedDims = [(v_deg, 1)].into_iter().collect();
    let generator = s.mul(&w.multiplier, &entry_elem(s, &d, w.row, w.column)?.expect("witness entry is nonzero"))?;
    let witnesses = Witnesses {
        maps: vec![("presentation".into(), map_json(&d))],
        teter: Some(TeterWitnessJson {
            multiplier: poly_json(&s.lift(&w.multiplier)),
            column: w.column,
            row: w.row,
            generator_of_j: poly_json(&s.lift(&generator)),
        }),
        ..Witnesses::default()
    };
    Ok(SplittingCertificate::new(SplitPath::Teter, witnesses, hf, predicted, checks))
}

/// The witness with its column multiplied by a variable: it stays in the
/// kernel but is no longer a minimal generator.
pub fn corrupted<F: Field>(s: &Algebra<F>, w: &TeterWitness<F>) -> Result<TeterWitness<F>> {
    let x = s.var(0);
    Ok(TeterWitness { multiplier: s.mul(&w.multiplier, &x)?, column: w.column, row: w.row })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn teter_ring() -> (PrimeField, Algebra<PrimeField>) {
        let f = PrimeField::new(101).unwrap();
        let g = [Poly::var(&f, 2, 0).pow(3), Poly::var(&f, 2, 1).pow(3)];
        let s = Algebra::from_generators(&f, vec!["x".into(), "y".into()], &g, 6).unwrap();
        (f, s)
    }

    #[test]
    fn residue_field_splits_off_for_teter_ring() {
        let (_, s) = teter_ring();
        let k = Ideal::maximal(&s);
        let cert = teter_certificate(&s, &k).unwrap();
        assert!(cert.valid, "{:?}", cert.checks.first_failure());
        assert_eq!(cert.summand_hilbert, cert.predicted_hilbert);
        assert_eq!(cert.summand_hilbert.values().sum::<usize>(), 1);
    }

    #[test]
    fn corrupted_witness_is_rejected() {
        let (_, s) = teter_ring();
        let k = Ideal::maximal(&s);
        let j = k.annihilator(&s).unwrap();
        let d = presentation(&s, &k).unwrap();
        let w = teter_witness(&s, &j, &d).unwrap();
        let bad = corrupted(&s, &w).unwrap();
        let (checks, _) = verify_teter_split(&s, &j, &d, &bad).unwrap();
        assert!(!checks.all_passed());
        assert!(!checks.get("witness is a minimal generator").unwrap().passed);
    }

    #[test]
    fn gorenstein_quotient_has_no_witness() {
        let (_, s) = teter_ring();
        let j = Ideal::zero(&s);
        let d = presentation(&s, &Ideal::maximal(&s)).unwrap();
        assert!(matches!(teter_witness(&s, &j, &d), Err(Error::Hypothesis(_))));
    }
}
