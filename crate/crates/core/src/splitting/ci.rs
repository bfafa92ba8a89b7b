//! `B/B^2` as a summand of `syz_2(BS)` when `B` is a complete intersection.

use crate::complexes::{koszul, polys_to_elem, FreeModule, GradedDims, GradedMap, Submodule};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::Ideal;
use crate::ring::{Algebra, Poly};

use super::cone::{check_direct_sum, cone_data};
use super::lift::solve_over;
use super::{
    find_delta, ideal_hilbert, map_json, minus_scalar_identity, poly_json, products_vanish, shift_dims, SplitPath,
    SplittingCertificate, Witnesses,
};
use crate::complexes::resolution::map_vanishes;

/// Hilbert function of `B/B^2` from the quotients `P/B^2` and `P/B`.
pub fn conormal_hilbert<F: Field>(f: &F, names: &[String], gens: &[Poly<F>], bound: usize) -> Result<GradedDims> {
    let mut sq = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i..] {
            sq.push(a.mul(b));
        }
    }
    let pb = Algebra::from_generators(f, names.to_vec(), gens, bound)?;
    let pb2 = Algebra::from_generators(f, names.to_vec(), &sq, bound)?;
    let top = pb2.top().max(pb.top());
    let mut out = GradedDims::new();
    for d in 0..=top {
        let n = pb2.dim(d) - pb.dim(d);
        if n > 0 {
            out.insert(d as i64, n);
        }
    }
    Ok(out)
}

/// Homotopy `L: B_1(-deg Δ) -> B_2` with `b2 ∘ L ≡ Δ·id mod A`, entries
/// taken from `(A : B^2)`. Solved column by column inside `S`.
pub fn solve_homotopy<F: Field>(
    s: &Algebra<F>,
    k: &Ideal<F>,
    b2: &GradedMap<F>,
    delta: &Poly<F>,
) -> Result<GradedMap<F>> {
    let f = s.field();
    let n = s.nvars();
    let dd = delta.degree().unwrap_or(0) as i64;
    let ann_k2 = k.product(s, k)?.annihilator(s)?;
    let source = b2.target.shifted(dd);
    let mut l = GradedMap::zero(f, n, source.clone(), b2.source.clone());
    for (j, &t) in source.twists.iter().enumerate() {
        let mut col = vec![Poly::zero(f, n); b2.nrows()];
        col[j] = delta.clone();
        let rhs = polys_to_elem(s, &b2.target, t, &col)?;
        let allowed = |_: usize, e: i64| {
            if e < 0 || e as usize > s.top() {
                None
            } else {
                Some(ann_k2.piece(e as usize).clone())
            }
        };
        let w = solve_over(s, b2, &rhs, &allowed)?
            .ok_or_else(|| Error::Hypothesis("no homotopy with entries in (A : B^2)".into()))?;
        for (i, wi) in w.into_iter().enumerate() {
            l.entries[i][j] = wi;
        }
    }
    l.validate()?;
    Ok(l)
}

/// Full certificate for `S = P/A` and `K = B/A` with `B` a complete
/// intersection containing `A` in its square.
pub fn ci_certificate<F: Field>(s: &Algebra<F>, k: &Ideal<F>) -> Result<SplittingCertificate> {
    let f = s.field();
    let n = s.nvars();
    let b_gens = k.lifted_gens(s);
    if b_gens.len() < 2 {
        return Err(Error::Hypothesis("B needs a regular sequence of length at least two".into()));
    }
    if b_gens.len() != n {
        return Err(Error::Hypothesis(format!("B has {} generators in {n} variables, not a complete intersection", b_gens.len())));
    }
    let ks = koszul(f, n, &b_gens)?;
    let b3 = match ks.get(2) {
        Some(m) => m.clone(),
        None => GradedMap::zero(f, n, FreeModule::default(), ks[1].source.clone()),
    };
    let (delta, delta_elem) = find_delta(s, k)?;
    let (cone, mut checks) = cone_data(s, &ks[0], &ks[1], &b3)?;
    let l = solve_homotopy(s, k, &ks[1], &delta)?;
    let bl = ks[1].compose(&l)?;
    checks.push("b2 * L = Δ·id mod A", map_vanishes(s, &minus_scalar_identity(&bl, &delta)?)?, "entries reduced in S");
    let r = s.quotient_by(std::slice::from_ref(&delta_elem))?;
    checks.push("B·I_1(L) inside (A, Δ)", products_vanish(&r, &b_gens, &l)?, "products reduced in R");

    let zero_rows = GradedMap::zero(f, n, l.source.clone(), cone.a1.source.clone());
    let delta2_right = l.vstack(&zero_rows)?;
    let z = Submodule::kernel(&r, &cone.delta1)?;
    let x = Submodule::image(&r, &cone.delta2_left)?;
    let y = Submodule::image(&r, &delta2_right)?;
    check_direct_sum(&z, &x, &y, &mut checks)?;

    // ker L̄̄ = B·B_1 (the term (A : B)B_1 vanishes over R).
    let ker_l = Submodule::kernel(&r, &l)?;
    let mut gens = Vec::new();
    for (j, &t) in l.source.twists.iter().enumerate() {
        for g in &b_gens {
            let mut col = vec![Poly::zero(f, n); l.ncols()];
            col[j] = g.clone();
            let d = t + g.degree().unwrap_or(0) as i64;
            gens.push(polys_to_elem(&r, &l.source, d, &col)?);
        }
    }
    let bb1 = Submodule::generated(&r, &l.source, &gens)?;
    checks.push("ker L = B·B_1 over R", ker_l.same_as(&bb1), format!("kernel dims {:?}", ker_l.hilbert()));

    let dd = delta.degree().unwrap_or(0) as i64;
    let conormal = conormal_hilbert(f, s.names(), &b_gens, s.top() + 1)?;
    let mut free_sum = GradedDims::new();
    let pb = ideal_hilbert(&k.quotient_hf(s));
    for g in &b_gens {
        for (d, m) in shift_dims(&pb, g.degree().unwrap_or(0) as i64) {
            *free_sum.entry(d).or_insert(0) += m;
        }
    }
    checks.push("B/B^2 is free over P/B of rank c", conormal == free_sum, format!("B/B^2 dims {conormal:?}"));
    let summand = y.hilbert();
    let predicted = shift_dims(&conormal, dd);
    checks.push("summand matches B/B^2", summand == predicted, format!("summand dims {summand:?}"));

    let witnesses = Witnesses {
        delta: Some(poly_json(&delta)),
        delta_scalar: Some(f.format(&f.one())),
        maps: vec![
            ("b1".into(), map_json(&ks[0])),
            ("b2".into(), map_json(&ks[1])),
            ("c1".into(), map_json(&cone.c1)),
            ("L".into(), map_json(&l)),
        ],
        ..Witnesses::default()
    };
    Ok(SplittingCertificate::new(SplitPath::CompleteIntersection, witnesses, summand, predicted, checks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn case_with_one_extra_generator() {
        let f = PrimeField::new(101).unwrap();
        let x = Poly::var(&f, 2, 0);
        let y = Poly::var(&f, 2, 1);
        let s = Algebra::from_generators(&f, vec!["x".into(), "y".into()], &[x.pow(5), y.pow(4)], 10).unwrap();
        let k = Ideal::from_polys(&s, &[y.clone(), x.pow(2)]).unwrap();
        let cert = ci_certificate(&s, &k).unwrap();
        assert!(cert.valid, "{:?}", cert.checks.first_failure());
        assert_eq!(cert.summand_hilbert, cert.predicted_hilbert);
    }

    #[test]
    fn a_outside_b_squared_is_rejected() {
        let f = PrimeField::new(101).unwrap();
        let x = Poly::var(&f, 2, 0);
        let y = Poly::var(&f, 2, 1);
        let s = Algebra::from_generators(&f, vec!["x".into(), "y".into()], &[x.pow(3), y.pow(3)], 8).unwrap();
        let k = Ideal::from_polys(&s, &[x.pow(2), y.clone()]).unwrap();
        assert!(matches!(ci_certificate(&s, &k), Err(Error::Hypothesis(_))));
    }
}
