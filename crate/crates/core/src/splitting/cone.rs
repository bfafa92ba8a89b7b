use crate::complexes::resolution::{block_map, map_vanishes, tensor_modules};
use crate::complexes::{resolve_quotient, FreeModule, GradedMap, Submodule};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::ring::{Algebra, Poly};

use super::lift::{defining_generators, ideal_span, lift_through, monomial_span};
use super::Checks;

/// Mapping-cone data comparing a resolution of `A` with one of `B ⊇ A`.
#[derive(Clone, Debug)]
pub struct ConeData<F: Field> {
    pub a1: GradedMap<F>,
    pub a2: GradedMap<F>,
    pub b1: GradedMap<F>,
    pub b2: GradedMap<F>,
    pub b3: GradedMap<F>,
    /// `A_1 -> B_1` with `b1 ∘ c1 = a1` and image inside `B·B_1`.
    pub c1: GradedMap<F>,
    /// `A_2 -> B_2` with `b2 ∘ c2 = c1 ∘ a2`.
    pub c2: GradedMap<F>,
    /// `Λ^2 B_1 -> B_2` on the pairs `i < j`, in lexicographic order.
    pub mu: GradedMap<F>,
    pub phi: GradedMap<F>,
    pub delta1: GradedMap<F>,
    pub delta2_left: GradedMap<F>,
}

fn pair_index(r: usize, i: usize, j: usize) -> usize {
    // Position of (i, j), i < j, among the lexicographically ordered pairs.
    i * r - i * (i + 1) / 2 + (j - i - 1)
}

/// Builds the comparison maps and the two differentials of the cone for
/// `S = P/A` and the given presentation `B_3 -> B_2 -> B_1 -> P` of `B`.
/// The resolution of `A` is computed over `P` truncated above `socle + 2`,
/// which contains every generator of its first two syzygy modules.
pub fn cone_data<F: Field>(
    s: &Algebra<F>,
    b1: &GradedMap<F>,
    b2: &GradedMap<F>,
    b3: &GradedMap<F>,
) -> Result<(ConeData<F>, Checks)> {
    let f = s.field();
    let n = s.nvars();
    let mut checks = Checks::default();
    let p = Algebra::polynomial(f, s.names().to_vec(), s.top() + 2)?;
    let a_gens = defining_generators(s);
    let res = resolve_quotient(&p, &a_gens, 2)?;
    let a1 = res.maps[0].clone();
    let a2 = match res.maps.get(1) {
        Some(m) => m.clone(),
        None => GradedMap::zero(f, n, FreeModule::default(), a1.source.clone()),
    };
    checks.push("a1 * a2 = 0", a1.compose(&a2)?.is_zero(), "resolution of A over P");

    let b_gens: Vec<Poly<F>> = b1.entries[0].clone();
    let mono = |_: usize, e: i64| monomial_span(f, n, e);
    let none = |_: usize, _: i64| Vec::<Poly<F>>::new();

    let mut c1 = GradedMap::zero(f, n, a1.source.clone(), b1.source.clone());
    for (al, &t) in a1.source.twists.iter().enumerate() {
        let in_b = |_: usize, e: i64| ideal_span(&b_gens, n, e);
        let w = lift_through(b1, &[a1.entries[0][al].clone()], t, &in_b, &none)?
            .ok_or_else(|| Error::Hypothesis("A is not contained in B^2".into()))?;
        for (i, wi) in w.into_iter().enumerate() {
            c1.entries[i][al] = wi;
        }
    }
    c1.validate()?;
    checks.push("b1 * c1 = a1", b1.compose(&c1)?.sub(&a1)?.is_zero(), "entries of c1 lie in B");

    let r = b1.ncols();
    let tw = &b1.source.twists;
    let mut pair_twists = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            pair_twists.push(tw[i] + tw[j]);
        }
    }
    let mut mu = GradedMap::zero(f, n, FreeModule::new(pair_twists), b2.source.clone());
    for i in 0..r {
        for j in i + 1..r {
            let mut rhs = vec![Poly::zero(f, n); r];
            rhs[j] = b_gens[i].clone();
            rhs[i] = b_gens[j].neg();
            let w = lift_through(b2, &rhs, tw[i] + tw[j], &mono, &none)?
                .ok_or_else(|| Error::Invariant("Koszul relation outside the image of b2".into()))?;
            let col = pair_index(r, i, j);
            for (k, wk) in w.into_iter().enumerate() {
                mu.entries[k][col] = wk;
            }
        }
    }
    mu.validate()?;
    let mut mu_ok = true;
    let b2mu = b2.compose(&mu)?;
    for i in 0..r {
        for j in i + 1..r {
            let col = pair_index(r, i, j);
            for k in 0..r {
                let want = if k == j {
                    b_gens[i].clone()
                } else if k == i {
                    b_gens[j].neg()
                } else {
                    Poly::zero(f, n)
                };
                if b2mu.entries[k][col] != want {
                    mu_ok = false;
                }
            }
        }
    }
    checks.push("b2 * mu = Koszul relations", mu_ok, "checked on every basis pair");

    // phi(α ⊗ β_j) = Σ_i c1[i][α] μ(β_i ∧ β_j).
    let ab = tensor_modules(&a1.source, &b1.source);
    let mut phi = GradedMap::zero(f, n, ab.clone(), b2.source.clone());
    let mut one_b1 = GradedMap::zero(f, n, ab.clone(), a1.source.clone());
    for al in 0..a1.ncols() {
        for j in 0..r {
            let col = al * r + j;
            one_b1.entries[al][col] = b_gens[j].clone();
            for i in 0..r {
                let c = &c1.entries[i][al];
                if i == j || c.is_zero() {
                    continue;
                }
                let (pc, sign) = if i < j { (pair_index(r, i, j), false) } else { (pair_index(r, j, i), true) };
                for k in 0..b2.ncols() {
                    let m = &mu.entries[k][pc];
                    if m.is_zero() {
                        continue;
                    }
                    let t = c.mul(m);
                    phi.entries[k][col] = if sign { phi.entries[k][col].sub(&t) } else { phi.entries[k][col].add(&t) };
                }
            }
        }
    }
    phi.validate()?;
    one_b1.validate()?;

    let mut c2 = GradedMap::zero(f, n, a2.source.clone(), b2.source.clone());
    let c1a2 = c1.compose(&a2)?;
    for (g, &t) in a2.source.twists.iter().enumerate() {
        let rhs: Vec<Poly<F>> = c1a2.entries.iter().map(|row| row[g].clone()).collect();
        let w = lift_through(b2, &rhs, t, &mono, &none)?
            .ok_or_else(|| Error::Invariant("comparison map does not lift to B_2".into()))?;
        for (k, wk) in w.into_iter().enumerate() {
            c2.entries[k][g] = wk;
        }
    }
    c2.validate()?;
    checks.push("b2 * c2 = c1 * a2", b2.compose(&c2)?.sub(&c1a2)?.is_zero(), "exact equality in P");

    let delta1 = b2.hstack(&c1)?;
    let neg_a2 = a2.neg();
    let delta2_left = block_map(
        f,
        n,
        &[b3.source.clone(), a2.source.clone(), ab],
        &[b2.source.clone(), a1.source.clone()],
        &[vec![Some(b3), Some(&c2), Some(&phi)], vec![None, Some(&neg_a2), Some(&one_b1)]],
    )?;
    let comp = delta1.compose(&delta2_left)?;
    checks.push("delta1 * delta2_left = 0 mod A", map_vanishes(s, &comp)?, "entries reduced in S");

    let data = ConeData { a1, a2, b1: b1.clone(), b2: b2.clone(), b3: b3.clone(), c1, c2, mu, phi, delta1, delta2_left };
    Ok((data, checks))
}

/// Pushes the pair of checks `x + y = z` and `x ∩ y = 0`, per degree.
pub(crate) fn check_direct_sum<F: Field>(
    z: &Submodule<F>,
    x: &Submodule<F>,
    y: &Submodule<F>,
    checks: &mut Checks,
) -> Result<bool> {
    let sum = x.sum(y)?;
    let a = checks.push("summands add up to the syzygy", sum.same_as(z), format!("syzygy dims {:?}", z.hilbert()));
    let meet = x.intersection(y)?;
    let b = checks.push("summands meet in zero", meet.is_zero(), format!("intersection dims {:?}", meet.hilbert()));
    Ok(a && b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_positions_are_lexicographic() {
        let mut k = 0;
        for i in 0..5 {
            for j in i + 1..5 {
                assert_eq!(pair_index(5, i, j), k);
                k += 1;
            }
        }
    }
}
