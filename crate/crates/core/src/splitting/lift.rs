use std::collections::HashMap;

use crate::complexes::{elem_to_polys, GradedMap, ModElem};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, Subspace};
use crate::ring::monomial::{key_degree, monomials_of_degree};
use crate::ring::{Algebra, MonoKey, Poly};

/// Solves `map · w = rhs + slack` in the polynomial ring, where `rhs` is a
/// homogeneous column of module degree `deg`. Block `j` of `w` ranges over
/// the span of `span(j, e_j)` with `e_j = deg - twist_j`; row `i` may absorb
/// any combination of `slack(i, deg - target_twist_i)`. Returns `None` when
/// no solution exists.
pub fn lift_through<F: Field>(
    map: &GradedMap<F>,
    rhs: &[Poly<F>],
    deg: i64,
    span: &dyn Fn(usize, i64) -> Vec<Poly<F>>,
    slack: &dyn Fn(usize, i64) -> Vec<Poly<F>>,
) -> Result<Option<Vec<Poly<F>>>> {
    let f = &map.field;
    let n = map.nvars;
    if rhs.len() != map.nrows() {
        return Err(Error::Dimension("right-hand side has the wrong length".into()));
    }
    // Equation index: (row i, monomial of degree deg - t_i).
    let mut offsets = Vec::with_capacity(map.nrows());
    let mut index: Vec<HashMap<MonoKey, usize>> = Vec::with_capacity(map.nrows());
    let mut total = 0;
    for &t in &map.target.twists {
        offsets.push(total);
        let e = deg - t;
        let mons = if e >= 0 { monomials_of_degree(n, e as usize) } else { Vec::new() };
        index.push(mons.iter().enumerate().map(|(k, m)| (*m, k)).collect());
        total += mons.len();
    }
    let place = |row: usize, p: &Poly<F>, out: &mut Vec<F::Elem>| -> Result<()> {
        for (k, c) in p.terms() {
            let pos = index[row]
                .get(k)
                .ok_or_else(|| Error::Invariant(format!("term of degree {} outside row {row}", key_degree(*k))))?;
            let slot = &mut out[offsets[row] + pos];
            *slot = f.add(slot, c);
        }
        Ok(())
    };
    let mut unknowns: Vec<(usize, Poly<F>)> = Vec::new();
    let mut rows = Vec::new();
    for j in 0..map.ncols() {
        let e = deg - map.source.twists[j];
        if e < 0 {
            continue;
        }
        for g in span(j, e) {
            if g.is_zero() {
                continue;
            }
            let mut v = vec![f.zero(); total];
            for i in 0..map.nrows() {
                let p = &map.entries[i][j];
                if !p.is_zero() {
                    place(i, &p.mul(&g), &mut v)?;
                }
            }
            rows.push(v);
            unknowns.push((j, g));
        }
    }
    let nsol = unknowns.len();
    for i in 0..map.nrows() {
        let e = deg - map.target.twists[i];
        if e < 0 {
            continue;
        }
        for h in slack(i, e) {
            let mut v = vec![f.zero(); total];
            place(i, &h, &mut v)?;
            rows.push(v);
        }
    }
    let mut b = vec![f.zero(); total];
    for (i, p) in rhs.iter().enumerate() {
        place(i, p, &mut b)?;
    }
    if rows.is_empty() {
        return Ok(if b.iter().all(|c| f.is_zero(c)) { Some(vec![Poly::zero(f, n); map.ncols()]) } else { None });
    }
    let a = Matrix::from_rows(f, total, rows)?.transpose();
    let x = match a.solve(&b) {
        Ok((x, _)) => x,
        Err(Error::Inconsistent) => return Ok(None),
        Err(e) => return Err(e),
    };
    let mut w = vec![Poly::zero(f, n); map.ncols()];
    for (k, (j, g)) in unknowns.iter().enumerate().take(nsol) {
        if !f.is_zero(&x[k]) {
            w[*j] = w[*j].add(&g.scale(&x[k]));
        }
    }
    Ok(Some(w))
}

/// Solves `map · w = rhs` in `F ⊗ alg` with `rhs` of degree `deg`; block `j`
/// of `w` is restricted to `allowed(j, e_j)` when that returns a subspace of
/// `alg_{e_j}`. Returns standard-monomial lifts of a particular solution.
pub fn solve_over<F: Field>(
    alg: &Algebra<F>,
    map: &GradedMap<F>,
    rhs: &ModElem<F>,
    allowed: &dyn Fn(usize, i64) -> Option<Subspace<F>>,
) -> Result<Option<Vec<Poly<F>>>> {
    let f = alg.field();
    let d = rhs.deg;
    let ev = map.eval(alg)?;
    let lay = map.source.layout(alg, d);
    let mut vecs: Vec<Vec<F::Elem>> = Vec::new();
    for j in 0..map.ncols() {
        let (o, dim) = lay.blocks[j];
        if dim == 0 {
            continue;
        }
        let e = d - map.source.twists[j];
        let basis: Vec<Vec<F::Elem>> = match allowed(j, e) {
            Some(sp) => sp.basis().to_vec(),
            None => (0..dim)
                .map(|k| {
                    let mut v = vec![f.zero(); dim];
                    v[k] = f.one();
                    v
                })
                .collect(),
        };
        for b in basis {
            let mut v = vec![f.zero(); lay.total];
            v[o..o + dim].clone_from_slice(&b);
            vecs.push(v);
        }
    }
    let target_dim = map.target.dim_at(alg, d);
    if rhs.coords.len() != target_dim {
        return Err(Error::Dimension("right-hand side has the wrong degree layout".into()));
    }
    if vecs.is_empty() {
        return Ok(if rhs.is_zero(f) { Some(vec![Poly::zero(f, alg.nvars()); map.ncols()]) } else { None });
    }
    let images: Vec<Vec<F::Elem>> = vecs.iter().map(|v| ev.apply(d, v)).collect();
    let a = Matrix::from_rows(f, target_dim, images)?.transpose();
    let x = match a.solve(&rhs.coords) {
        Ok((x, _)) => x,
        Err(Error::Inconsistent) => return Ok(None),
        Err(e) => return Err(e),
    };
    let mut w = vec![f.zero(); lay.total];
    for (c, v) in x.iter().zip(&vecs) {
        if f.is_zero(c) {
            continue;
        }
        for (a, b) in w.iter_mut().zip(v) {
            f.mul_add_assign(a, c, b);
        }
    }
    Ok(Some(elem_to_polys(alg, &map.source, &ModElem { deg: d, coords: w })))
}

/// All products `g · m` with `g` among `gens` and `m` a monomial, landing in
/// degree `e`.
pub(crate) fn ideal_span<F: Field>(gens: &[Poly<F>], nvars: usize, e: i64) -> Vec<Poly<F>> {
    let mut out = Vec::new();
    if e < 0 {
        return out;
    }
    for g in gens {
        let Some(dg) = g.degree() else { continue };
        if dg as i64 > e {
            continue;
        }
        for m in monomials_of_degree(nvars, e as usize - dg) {
            out.push(g.mul_monomial(m));
        }
    }
    out
}

/// All monomials of degree `e` as polynomials.
pub(crate) fn monomial_span<F: Field>(field: &F, nvars: usize, e: i64) -> Vec<Poly<F>> {
    if e < 0 {
        return Vec::new();
    }
    monomials_of_degree(nvars, e as usize).into_iter().map(|m| Poly::monomial(field, nvars, m, field.one())).collect()
}

/// Minimal generators of the defining ideal of `alg`, as polynomials: in
/// each degree, a complement of `vars · A_{d-1}` inside `A_d`.
pub fn defining_generators<F: Field>(alg: &Algebra<F>) -> Vec<Poly<F>> {
    let f = alg.field();
    let n = alg.nvars();
    let mut out = Vec::new();
    let mut prev: Option<Subspace<F>> = None;
    for d in 0..=alg.top() + 1 {
        let piece = alg.ideal_piece(d);
        let mons = monomials_of_degree(n, d);
        let index: HashMap<MonoKey, usize> = mons.iter().enumerate().map(|(k, m)| (*m, k)).collect();
        let mut lower = Subspace::zero(f, mons.len());
        if let Some(p) = &prev {
            let pm = monomials_of_degree(n, d - 1);
            for row in p.basis() {
                for i in 0..n {
                    let mut v = vec![f.zero(); mons.len()];
                    for (k, c) in row.iter().enumerate() {
                        if !f.is_zero(c) {
                            v[index[&(pm[k] + crate::ring::monomial::var_key(i))]] = c.clone();
                        }
                    }
                    lower.insert(&v);
                }
            }
        }
        for v in piece.complement_in(&lower) {
            out.push(Poly::from_terms(f, n, mons.iter().zip(v).filter(|(_, c)| !f.is_zero(c)).map(|(m, c)| (*m, c))));
        }
        prev = Some(piece);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn lifts_through_a_row() {
        let q = Rationals;
        let x = Poly::var(&q, 2, 0);
        let y = Poly::var(&q, 2, 1);
        let row = GradedMap::row(&q, 2, 0, &[x.clone(), y.clone()]).unwrap();
        let target = x.pow(2).add(&x.mul(&y));
        let w = lift_through(&row, &[target.clone()], 2, &|_, e| monomial_span(&q, 2, e), &|_, _| Vec::new())
            .unwrap()
            .unwrap();
        assert_eq!(x.mul(&w[0]).add(&y.mul(&w[1])), target);
        let none = lift_through(
            &row,
            &[Poly::constant(&q, 2, q.one())],
            0,
            &|_, e| monomial_span(&q, 2, e),
            &|_, _| Vec::new(),
        )
        .unwrap();
        assert!(none.is_none());
    }

    #[test]
    fn generators_of_defining_ideal() {
        let q = Rationals;
        let g = [Poly::var(&q, 2, 0).pow(2), Poly::var(&q, 2, 1).pow(3)];
        let s = Algebra::from_generators(&q, vec!["x".into(), "y".into()], &g, 6).unwrap();
        let gens = defining_generators(&s);
        assert_eq!(gens.len(), 2);
        assert_eq!(gens.iter().map(|p| p.degree().unwrap()).collect::<Vec<_>>(), vec![2, 3]);
    }
}
