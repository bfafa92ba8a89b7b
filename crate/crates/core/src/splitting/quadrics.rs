//! The conormal module `B'/BB'` as a summand of `syz_2(BS)` when
//! `B = (Y) + B'` with `B'` five quadrics in three further variables.
//!
//! After a linear change of coordinates the quadrics take the shape
//! `xy, xz, yz, u2·x² - u1·y², u3·x² - u1·z²`, whose Pfaffian resolution
//! and homotopy are written out explicitly below.

use std::collections::HashMap;

use serde::Serialize;

use crate::complexes::resolution::map_vanishes;
use crate::complexes::{koszul, polys_to_elem, resolve_quotient, Complex, FreeModule, GradedMap, Submodule};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::Ideal;
use crate::linalg::{Matrix, Subspace};
use crate::ring::monomial::{exps_of, key_div, key_divides, key_from_exps, monomials_of_degree, var_key};
use crate::ring::{Algebra, MonoKey, PairingData, Poly, RingElem};

use super::ci::conormal_hilbert;
use super::cone::{check_direct_sum, cone_data};
use super::lift::solve_over;
use super::{
    find_delta, map_json, minus_scalar_identity, poly_json, products_vanish, shift_dims, Checks, PolyJson, SplitPath,
    SplittingCertificate, Witnesses,
};

/// Diagonalizing basis for the quadric pairing `(a, b) ↦ φ(ab)`, where `φ`
/// spans the functionals on `P'_2` that vanish on the quadrics.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadricNormalization<F: Field> {
    /// New variables `x, y, z` as linear forms in the old three.
    pub forms: Vec<Vec<F::Elem>>,
    /// `φ(x²), φ(y²), φ(z²)`.
    pub units: [F::Elem; 3],
    /// `φ` on the degree-2 monomials, in graded-lex order.
    pub functional: Vec<F::Elem>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormalizationJson {
    /// Row `i` writes new variable `i` as a linear form in the input variables.
    pub transform: Vec<Vec<String>>,
    pub units: Vec<String>,
    pub linear_part: usize,
}

fn quad_index() -> HashMap<MonoKey, usize> {
    monomials_of_degree(3, 2).into_iter().enumerate().map(|(i, m)| (m, i)).collect()
}

fn pairing<F: Field>(f: &F, gram: &[Vec<F::Elem>], a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    let mut acc = f.zero();
    for i in 0..3 {
        for j in 0..3 {
            let t = f.mul(&a[i], &b[j]);
            f.mul_add_assign(&mut acc, &t, &gram[i][j]);
        }
    }
    acc
}

fn axpy<F: Field>(f: &F, c: &F::Elem, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
    y.iter().zip(x).map(|(b, a)| f.add(b, &f.mul(c, a))).collect()
}

fn unit_vec<F: Field>(f: &F, i: usize) -> Vec<F::Elem> {
    let mut v = vec![f.zero(); 3];
    v[i] = f.one();
    v
}

/// Orthogonal basis in odd characteristic (and characteristic zero).
fn orthogonal_basis<F: Field>(f: &F, gram: &[Vec<F::Elem>]) -> Result<Vec<Vec<F::Elem>>> {
    let mut rest: Vec<Vec<F::Elem>> = (0..3).map(|i| unit_vec(f, i)).collect();
    let mut out = Vec::new();
    while !rest.is_empty() {
        let v = match rest.iter().find(|r| !f.is_zero(&pairing(f, gram, r, r))) {
            Some(v) => v.clone(),
            None => {
                let mut pick = None;
                'outer: for a in &rest {
                    for b in &rest {
                        if !f.is_zero(&pairing(f, gram, a, b)) {
                            pick = Some(a.iter().zip(b).map(|(p, q)| f.add(p, q)).collect::<Vec<_>>());
                            break 'outer;
                        }
                    }
                }
                pick.ok_or_else(|| Error::Hypothesis("the quadric pairing is degenerate".into()))?
            }
        };
        let vv = pairing(f, gram, &v, &v);
        let proj: Vec<Vec<F::Elem>> = rest
            .iter()
            .map(|w| {
                let c = f.neg(&f.div(&pairing(f, gram, w, &v), &vv).expect("nonzero"));
                axpy(f, &c, &v, w)
            })
            .collect();
        out.push(v);
        rest = Subspace::from_vectors(f, 3, proj).basis().to_vec();
        if rest.len() + out.len() != 3 {
            return Err(Error::Hypothesis("the quadric pairing is degenerate".into()));
        }
    }
    Ok(out)
}

/// Orthogonal basis in characteristic two, where `ℓ ↦ φ(ℓ²)` is additive.
fn orthogonal_basis_char2<F: Field>(f: &F, gram: &[Vec<F::Elem>]) -> Result<Vec<Vec<F::Elem>>> {
    let degenerate = || Error::Hypothesis("the quadric pairing is degenerate".into());
    let q = |v: &[F::Elem]| pairing(f, gram, v, v);
    let z1 = (0..3).map(|i| unit_vec(f, i)).find(|e| !f.is_zero(&q(e))).ok_or_else(degenerate)?;
    // W = z1^⊥, two-dimensional.
    let row: Vec<F::Elem> = (0..3).map(|i| pairing(f, gram, &z1, &unit_vec(f, i))).collect();
    let w = Matrix::from_rows(f, 3, vec![row])?.kernel();
    if w.dim() != 2 {
        return Err(degenerate());
    }
    let wb = w.basis().to_vec();
    if let Some(y1) = wb.iter().find(|b| !f.is_zero(&q(b))) {
        let r2: Vec<F::Elem> = (0..3).map(|i| pairing(f, gram, y1, &unit_vec(f, i))).collect();
        let rz: Vec<F::Elem> = (0..3).map(|i| pairing(f, gram, &z1, &unit_vec(f, i))).collect();
        let x1 = Matrix::from_rows(f, 3, vec![rz, r2])?.kernel();
        if x1.dim() != 1 {
            return Err(degenerate());
        }
        return Ok(vec![z1.clone(), y1.clone(), x1.basis()[0].clone()]);
    }
    // Every vector of W is isotropic: pick x1, y1 with φ(x1·y1) = 1.
    let t = pairing(f, gram, &wb[0], &wb[1]);
    let inv = f.inv(&t).ok_or_else(degenerate)?;
    let x1 = wb[0].clone();
    let y1: Vec<F::Elem> = wb[1].iter().map(|c| f.mul(c, &inv)).collect();
    let qz = q(&z1);
    let sum = |parts: &[(&F::Elem, &Vec<F::Elem>)]| -> Vec<F::Elem> {
        let mut v = vec![f.zero(); 3];
        for (c, p) in parts {
            v = axpy(f, c, p, &v);
        }
        v
    };
    let one = f.one();
    let x = sum(&[(&qz, &x1), (&one, &z1)]);
    let y = sum(&[(&f.add(&one, &qz), &x1), (&one, &y1), (&one, &z1)]);
    let z = sum(&[(&one, &x1), (&one, &y1), (&one, &z1)]);
    Ok(vec![x, y, z])
}

/// Normalizes five independent quadrics in three variables, given by their
/// coefficient vectors on the graded-lex degree-2 monomials.
pub fn normalize_quadrics<F: Field>(f: &F, quadrics: &[Vec<F::Elem>]) -> Result<QuadricNormalization<F>> {
    let m = Matrix::from_rows(f, 6, quadrics.to_vec())?;
    if m.rank() != 5 {
        return Err(Error::Hypothesis(format!("expected five independent quadrics, found rank {}", m.rank())));
    }
    let phi = m.kernel().basis()[0].clone();
    let idx = quad_index();
    let gram: Vec<Vec<F::Elem>> =
        (0..3).map(|i| (0..3).map(|j| phi[idx[&(var_key(i) + var_key(j))]].clone()).collect()).collect();
    let forms = if f.characteristic() == 2 { orthogonal_basis_char2(f, &gram)? } else { orthogonal_basis(f, &gram)? };
    for i in 0..3 {
        for j in 0..3 {
            let t = pairing(f, &gram, &forms[i], &forms[j]);
            if (i == j) == f.is_zero(&t) {
                return Err(Error::Invariant("normalized basis is not orthogonal with unit squares".into()));
            }
        }
    }
    let units = [0, 1, 2].map(|i| pairing(f, &gram, &forms[i], &forms[i]));
    Ok(QuadricNormalization { forms, units, functional: phi })
}

/// `xy, xz, yz, u2·x² - u1·y², u3·x² - u1·z²` on variables `0, 1, 2` of `nvars`.
pub fn canonical_quadrics<F: Field>(f: &F, nvars: usize, u: &[F::Elem; 3]) -> Vec<Poly<F>> {
    let v = |i| Poly::var(f, nvars, i);
    let (x, y, z) = (v(0), v(1), v(2));
    vec![
        x.mul(&y),
        x.mul(&z),
        y.mul(&z),
        x.mul(&x).scale(&u[1]).sub(&y.mul(&y).scale(&u[0])),
        x.mul(&x).scale(&u[2]).sub(&z.mul(&z).scale(&u[0])),
    ]
}

/// The Pfaffian complex `P <- B_1' <- B_2' <- B_3'` of the canonical
/// quadrics, scaled so that its first map is `u3·xy, u2·xz, yz,
/// u2u3·x² - u1u3·y², u3²·x² - u1u3·z²` and `b3' = b1'ᵀ`.
pub fn pfaffian_maps<F: Field>(f: &F, nvars: usize, u: &[F::Elem; 3]) -> Result<[GradedMap<F>; 3]> {
    let v = |i| Poly::var(f, nvars, i);
    let (x, y, z) = (v(0), v(1), v(2));
    let (u1, u2, u3) = (&u[0], &u[1], &u[2]);
    let u13 = f.mul(u1, u3);
    let zero = || Poly::zero(f, nvars);
    let b1_row = vec![
        x.mul(&y).scale(u3),
        x.mul(&z).scale(u2),
        y.mul(&z),
        x.mul(&x).scale(&f.mul(u2, u3)).sub(&y.mul(&y).scale(&u13)),
        x.mul(&x).scale(&f.mul(u3, u3)).sub(&z.mul(&z).scale(&u13)),
    ];
    let b2_rows = vec![
        vec![zero(), x.scale(u3), y.scale(&f.neg(&u13)), z.neg(), zero()],
        vec![x.scale(&f.neg(u3)), zero(), z.scale(&u13), zero(), y.clone()],
        vec![y.scale(&u13), z.scale(&f.neg(&u13)), zero(), x.scale(u3), x.scale(&f.neg(u2))],
        vec![z.clone(), zero(), x.scale(&f.neg(u3)), zero(), zero()],
        vec![zero(), y.neg(), x.scale(u2), zero(), zero()],
    ];
    let b1 = GradedMap::new(f, nvars, FreeModule::new(vec![2; 5]), FreeModule::new(vec![0]), vec![b1_row.clone()])?;
    let b2 = GradedMap::new(f, nvars, FreeModule::new(vec![3; 5]), FreeModule::new(vec![2; 5]), b2_rows)?;
    let b3 = GradedMap::new(
        f,
        nvars,
        FreeModule::new(vec![5]),
        FreeModule::new(vec![3; 5]),
        b1_row.into_iter().map(|p| vec![p]).collect(),
    )?;
    Ok([b1, b2, b3])
}

/// A linear combination of dual elements `α_m`, `m` of degree 3 in `x, y, z`.
pub type AlphaCombination<F> = Vec<([u32; 3], <F as Field>::Elem)>;

/// The homotopy `L'` with `b2'·L' ≡ L'·b2' ≡ Δ·id` modulo `A`, written in the
/// dual basis `α_m`, `m` cubic in `x, y, z`, entry `[row][column]`.
pub fn table_l_prime<F: Field>(f: &F, u: &[F::Elem; 3]) -> Result<Vec<Vec<AlphaCombination<F>>>> {
    let (u1, u2, u3) = (&u[0], &u[1], &u[2]);
    let div = |a: &F::Elem, b: &F::Elem| f.div(a, b);
    let neg = |a: &F::Elem| f.neg(a);
    let m = |a: &F::Elem, b: &F::Elem| f.mul(a, b);
    let one = f.one();
    const X3: [u32; 3] = [3, 0, 0];
    const Y3: [u32; 3] = [0, 3, 0];
    const Z3: [u32; 3] = [0, 0, 3];
    const X2Y: [u32; 3] = [2, 1, 0];
    const X2Z: [u32; 3] = [2, 0, 1];
    const XY2: [u32; 3] = [1, 2, 0];
    const XZ2: [u32; 3] = [1, 0, 2];
    const Y2Z: [u32; 3] = [0, 2, 1];
    const YZ2: [u32; 3] = [0, 1, 2];
    const XYZ: [u32; 3] = [1, 1, 1];
    let e = Vec::new;
    let rows: Vec<Vec<AlphaCombination<F>>> = vec![
        vec![e(), vec![(X3, neg(&div(u1, u3)?))], e(), vec![(Y2Z, u2.clone()), (Z3, u3.clone())], e()],
        vec![
            e(),
            e(),
            e(),
            vec![(X2Y, neg(&div(&m(u1, u2), u3)?))],
            vec![(X2Y, neg(u1)), (Y3, neg(u2)), (YZ2, neg(u3))],
        ],
        vec![
            vec![(Y3, neg(&div(u2, &m(u1, u3))?))],
            vec![(Z3, div(&one, u1)?)],
            e(),
            vec![(X3, neg(&div(u1, u3)?))],
            e(),
        ],
        vec![
            vec![(X2Z, neg(u1)), (Z3, neg(u3))],
            vec![(Y3, div(&m(u2, u2), u3)?)],
            vec![(XY2, div(u2, u3)?)],
            vec![(XYZ, neg(&m(u1, u2)))],
            vec![(XYZ, neg(&m(u1, u3)))],
        ],
        vec![
            vec![(X2Z, neg(&div(&m(u1, u3), u2)?)), (Z3, neg(&div(&m(u3, u3), u2)?))],
            vec![(Y3, u2.clone())],
            vec![(X3, neg(&div(u1, u2)?)), (XZ2, neg(&div(u3, u2)?))],
            e(),
            e(),
        ],
    ];
    Ok(rows)
}

/// The linear system on the 25·10 coefficients of a candidate `L'` in the
/// cubic dual basis, expressing `b2'·L' = L'·b2' = Δ·id` through
/// `ℓ·α_m = α_{m/ℓ}`: 300 equations indexed by (side, row, column, quadric
/// monomial). Returns the matrix (equations as rows) and the right side.
pub fn alpha_system<F: Field>(f: &F, u: &[F::Elem; 3]) -> Result<(Matrix<F>, Vec<F::Elem>)> {
    let [_, b2, _] = pfaffian_maps(f, 3, u)?;
    let beta = |i: usize, j: usize, v: usize| b2.entries[i][j].coeff(var_key(v));
    let cubics: HashMap<MonoKey, usize> = monomials_of_degree(3, 3).into_iter().enumerate().map(|(i, m)| (m, i)).collect();
    let quads = monomials_of_degree(3, 2);
    let unknown = |j: usize, k: usize, m: usize| (j * 5 + k) * 10 + m;
    let mut rows = Vec::with_capacity(300);
    let mut rhs = Vec::with_capacity(300);
    for side in 0..2 {
        for i in 0..5 {
            for k in 0..5 {
                for &mq in &quads {
                    let mut row = vec![f.zero(); 250];
                    for j in 0..5 {
                        for v in 0..3 {
                            let c = cubics[&(mq + var_key(v))];
                            let (coef, pos) =
                                if side == 0 { (beta(i, j, v), unknown(j, k, c)) } else { (beta(j, k, v), unknown(i, j, c)) };
                            row[pos] = f.add(&row[pos], &coef);
                        }
                    }
                    rows.push(row);
                    let diag = (0..3).find(|&v| mq == var_key(v) + var_key(v));
                    rhs.push(match diag {
                        Some(v) if i == k => u[v].clone(),
                        _ => f.zero(),
                    });
                }
            }
        }
    }
    Ok((Matrix::from_rows(f, 250, rows)?, rhs))
}

/// Coefficient vector of the tabulated `L'` in the unknowns of [`alpha_system`].
pub fn table_vector<F: Field>(f: &F, u: &[F::Elem; 3]) -> Result<Vec<F::Elem>> {
    let table = table_l_prime(f, u)?;
    let cubics: HashMap<MonoKey, usize> = monomials_of_degree(3, 3).into_iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut v = vec![f.zero(); 250];
    for (j, row) in table.iter().enumerate() {
        for (k, entry) in row.iter().enumerate() {
            for (e, c) in entry {
                let pos = (j * 5 + k) * 10 + cubics[&key_from_exps(e)];
                v[pos] = f.add(&v[pos], c);
            }
        }
    }
    Ok(v)
}

/// Solution-space dimension of the homogeneous α-system and whether the
/// tabulated `L'` solves the inhomogeneous one.
pub fn alpha_system_report<F: Field>(f: &F, u: &[F::Elem; 3]) -> Result<(usize, bool)> {
    let (m, rhs) = alpha_system(f, u)?;
    let x = table_vector(f, u)?;
    let solves = (0..m.nrows()).all(|r| {
        let mut acc = f.zero();
        for (c, xc) in x.iter().enumerate() {
            f.mul_add_assign(&mut acc, m.get(r, c), xc);
        }
        acc == rhs[r]
    });
    Ok((m.kernel().dim(), solves))
}

/// The homogeneous solutions `b3'·θ·b1'`, `θ` a dual element of degree 7,
/// as vectors in the unknowns of [`alpha_system`].
pub fn null_homotopic_span<F: Field>(f: &F, u: &[F::Elem; 3]) -> Result<Subspace<F>> {
    let [b1, _, _] = pfaffian_maps(f, 3, u)?;
    let row = &b1.entries[0];
    let cubics: HashMap<MonoKey, usize> = monomials_of_degree(3, 3).into_iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut vecs = Vec::new();
    for big in monomials_of_degree(3, 7) {
        let mut v = vec![f.zero(); 250];
        for i in 0..5 {
            for j in 0..5 {
                let g = row[i].mul(&row[j]);
                for (n, c) in g.terms() {
                    if key_divides(*n, big) {
                        let pos = (i * 5 + j) * 10 + cubics[&key_div(big, *n)];
                        v[pos] = f.add(&v[pos], c);
                    }
                }
            }
        }
        vecs.push(v);
    }
    Ok(Subspace::from_vectors(f, 250, vecs))
}

/// Report on the α-system: solution-space dimension of the homogeneous
/// system, whether it consists of the null-homotopic solutions, and whether
/// the tabulated `L'` solves the inhomogeneous one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaReport {
    pub unknowns: usize,
    pub equations: usize,
    pub kernel_dim: usize,
    pub kernel_is_null_homotopic: bool,
    pub table_solves: bool,
}

pub fn alpha_report<F: Field>(f: &F, u: &[F::Elem; 3]) -> Result<AlphaReport> {
    let (m, _) = alpha_system(f, u)?;
    let (kernel_dim, table_solves) = alpha_system_report(f, u)?;
    let ker = m.kernel();
    let nh = null_homotopic_span(f, u)?;
    Ok(AlphaReport {
        unknowns: m.ncols(),
        equations: m.nrows(),
        kernel_dim,
        kernel_is_null_homotopic: ker.is_subspace_of(&nh) && nh.is_subspace_of(&ker),
        table_solves,
    })
}

/// Generator degrees of the resolutions of `P'/B'` and `P'/B'^2` over
/// `P' = k[x, y, z]`, by homological degree.
pub fn pfaffian_betti<F: Field>(f: &F, u: &[F::Elem; 3]) -> Result<(Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    let p = Algebra::polynomial(f, names, 10)?;
    let q = canonical_quadrics(f, 3, u);
    let sq = products(&q);
    let tw = |gens: &[Poly<F>]| -> Result<Vec<Vec<i64>>> {
        let res = resolve_quotient(&p, gens, 4)?;
        Ok(res.modules().into_iter().map(|m| m.twists).collect())
    };
    Ok((tw(&q)?, tw(&sq)?))
}

/// Whether `B'^2 = (x, y, z)^4` in `k[x, y, z]`.
pub fn square_is_fourth_power<F: Field>(f: &F, u: &[F::Elem; 3]) -> Result<bool> {
    let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    let p = Algebra::polynomial(f, names, 8)?;
    let sq = Ideal::from_polys(&p, &products(&canonical_quadrics(f, 3, u)))?;
    Ok(sq.same_as(&Ideal::maximal_power(&p, 4)))
}

fn products<F: Field>(gens: &[Poly<F>]) -> Vec<Poly<F>> {
    let mut out = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i..] {
            out.push(a.mul(b));
        }
    }
    out
}

/// Entrywise product `a·b` of polynomial matrices, ignoring twists.
fn entry_product<F: Field>(a: &[Vec<Poly<F>>], b: &[Vec<Poly<F>>], f: &F, n: usize) -> Vec<Vec<Poly<F>>> {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|k| {
                    let mut acc = Poly::zero(f, n);
                    for (j, p) in row.iter().enumerate() {
                        if !p.is_zero() && !b[j][k].is_zero() {
                            acc = acc.add(&p.mul(&b[j][k]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn all_vanish<F: Field>(alg: &Algebra<F>, m: &[Vec<Poly<F>>]) -> Result<bool> {
    for row in m {
        for p in row {
            if !p.is_zero() && !alg.reduce(p)?.is_zero(alg.field()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `S` and `K` rewritten so that `x, y, z` carry the canonical quadrics and
/// the remaining variables span the linear part of `K`.
#[derive(Clone, Debug)]
pub struct NormalizedProblem<F: Field> {
    pub alg: Algebra<F>,
    pub ideal: Ideal<F>,
    pub units: [F::Elem; 3],
    /// Row `i`: new variable `i` as a linear form in the old variables.
    pub transform: Vec<Vec<F::Elem>>,
    pub linear_part: usize,
}

impl<F: Field> NormalizedProblem<F> {
    pub fn json(&self) -> NormalizationJson {
        let f = self.alg.field();
        NormalizationJson {
            transform: self.transform.iter().map(|r| r.iter().map(|c| f.format(c)).collect()).collect(),
            units: self.units.iter().map(|c| f.format(c)).collect(),
            linear_part: self.linear_part,
        }
    }
}

fn variable_names(n: usize) -> Vec<String> {
    let mut names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    if n == 4 {
        names.push("w".into());
    } else {
        names.extend((1..=n - 3).map(|i| format!("w{i}")));
    }
    names
}

/// Finds coordinates in which `K` is generated by `w_1..w_s` and the
/// canonical quadrics in `x, y, z`.
pub fn normalize_problem<F: Field>(s: &Algebra<F>, k: &Ideal<F>) -> Result<NormalizedProblem<F>> {
    let f = s.field();
    let n = s.nvars();
    if n < 3 {
        return Err(Error::Hypothesis("needs at least three variables".into()));
    }
    if s.initial_degree() < 5 {
        return Err(Error::Hypothesis("A is not contained in the fifth power of the maximal ideal".into()));
    }
    // Linear part of K in variable coordinates.
    let b1 = s.basis_monomials(1).to_vec();
    let var_of = |key: MonoKey| (0..n).find(|&i| var_key(i) == key).expect("degree-one monomial");
    let to_vars = |coords: &[F::Elem]| {
        let mut v = vec![f.zero(); n];
        for (c, &m) in coords.iter().zip(&b1) {
            v[var_of(m)] = c.clone();
        }
        v
    };
    let lin_forms: Vec<Vec<F::Elem>> = k.piece(1).basis().iter().map(|v| to_vars(v)).collect();
    let lin = Subspace::from_vectors(f, n, lin_forms.clone());
    let sdim = lin.dim();
    if n - sdim != 3 {
        return Err(Error::Hypothesis(format!("K has {sdim} linear generators in {n} variables, not n - 3")));
    }
    let mut first: Vec<Vec<F::Elem>> = lin.non_pivots().into_iter().map(|i| {
        let mut v = vec![f.zero(); n];
        v[i] = f.one();
        v
    }).collect();
    first.extend(lin.basis().iter().cloned());
    let m1 = Matrix::from_rows(f, n, first.clone())?;
    let m1inv = m1.inverse()?;
    let images = |inv: &Matrix<F>| -> Vec<Poly<F>> {
        (0..n).map(|j| Poly::linear(f, &(0..n).map(|i| inv.get(j, i).clone()).collect::<Vec<_>>())).collect()
    };
    let im1 = images(&m1inv);
    // Quadric part of K modulo the linear forms, in x, y, z.
    let qidx = quad_index();
    let mons2 = s.basis_monomials(2).to_vec();
    let mut quads = Vec::new();
    for v in k.piece(2).basis() {
        let p = Poly::from_terms(f, n, mons2.iter().zip(v).filter(|(_, c)| !f.is_zero(c)).map(|(m, c)| (*m, c.clone())));
        let q = p.substitute(&im1);
        let mut w = vec![f.zero(); 6];
        for (key, c) in q.terms() {
            let e = exps_of(*key, n);
            if e[3..].iter().all(|&a| a == 0) {
                w[qidx[&key_from_exps(&e[..3])]] = c.clone();
            }
        }
        quads.push(w);
    }
    let qspace = Subspace::from_vectors(f, 6, quads);
    if qspace.dim() != 5 {
        return Err(Error::Hypothesis(format!("K has {} quadrics outside its linear part, not five", qspace.dim())));
    }
    let norm = normalize_quadrics(f, qspace.basis())?;
    let mut transform = Vec::with_capacity(n);
    for form in &norm.forms {
        let mut row = vec![f.zero(); n];
        for (c, fr) in form.iter().zip(&first[..3]) {
            row = axpy_n(f, c, fr, &row);
        }
        transform.push(row);
    }
    transform.extend(first[3..].iter().cloned());
    let tinv = Matrix::from_rows(f, n, transform.clone())?.inverse()?;
    let im = images(&tinv);
    let alg = s.linear_change(&im, variable_names(n))?;
    let gens: Vec<Poly<F>> = k.lifted_gens(s).iter().map(|p| p.substitute(&im)).collect();
    let ideal = Ideal::from_polys(&alg, &gens)?;
    let mut canon = canonical_quadrics(f, n, &norm.units);
    canon.extend((3..n).map(|i| Poly::var(f, n, i)));
    if !Ideal::from_polys(&alg, &canon)?.same_as(&ideal) {
        return Err(Error::Hypothesis("K is not generated by its linear part and five quadrics".into()));
    }
    Ok(NormalizedProblem { alg, ideal, units: norm.units, transform, linear_part: sdim })
}

fn axpy_n<F: Field>(f: &F, c: &F::Elem, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
    y.iter().zip(x).map(|(b, a)| f.add(b, &f.mul(c, a))).collect()
}

fn alpha_poly<F: Field>(alg: &Algebra<F>, pd: &PairingData<F>, e: &[u32; 3]) -> Result<Poly<F>> {
    let mut full = vec![0u32; alg.nvars()];
    full[..3].copy_from_slice(e);
    let a = pd.alpha(key_from_exps(&full)).ok_or_else(|| Error::Invariant("missing dual element".into()))?;
    Ok(alg.lift(a))
}

/// `Δ = u1·α_{x²} + u2·α_{y²} + u3·α_{z²}`.
pub fn delta_formula<F: Field>(alg: &Algebra<F>, pd: &PairingData<F>, u: &[F::Elem; 3]) -> Result<Poly<F>> {
    let mut out = Poly::zero(alg.field(), alg.nvars());
    for (i, e) in [[2, 0, 0], [0, 2, 0], [0, 0, 2]].iter().enumerate() {
        out = out.add(&alpha_poly(alg, pd, e)?.scale(&u[i]));
    }
    Ok(out)
}

/// `L': B_1'(-deg Δ) -> B_2'` from the table, with `α_m` lifted from `alg`.
pub fn l_prime_map<F: Field>(alg: &Algebra<F>, pd: &PairingData<F>, u: &[F::Elem; 3]) -> Result<GradedMap<F>> {
    let f = alg.field();
    let n = alg.nvars();
    let dd = alg.top() as i64 - 2;
    let table = table_l_prime(f, u)?;
    let mut entries = vec![vec![Poly::zero(f, n); 5]; 5];
    for (r, row) in table.iter().enumerate() {
        for (c, comb) in row.iter().enumerate() {
            for (e, coef) in comb {
                entries[r][c] = entries[r][c].add(&alpha_poly(alg, pd, e)?.scale(coef));
            }
        }
    }
    GradedMap::new(f, n, FreeModule::new(vec![2 + dd; 5]), FreeModule::new(vec![3; 5]), entries)
}

/// `Δ`, its ratio to the monic generator of `(0 : K)` and `L'`, recording
/// the two-sided identity `b2'L' ≡ L'b2' ≡ Δ·I` modulo `A` in `checks`.
fn homotopy_table<F: Field>(
    s2: &Algebra<F>,
    k2: &Ideal<F>,
    pd: &PairingData<F>,
    u: &[F::Elem; 3],
    checks: &mut Checks,
) -> Result<(Poly<F>, Option<F::Elem>, GradedMap<F>)> {
    let f = s2.field();
    let n = s2.nvars();
    let delta = delta_formula(s2, pd, u)?;
    let (monic, _) = find_delta(s2, k2)?;
    let lead = monic.terms().keys().copied().find(|m| !f.is_zero(&delta.coeff(*m)));
    let scalar = lead.map(|m| f.div(&delta.coeff(m), &monic.coeff(m)).expect("monic coefficient"));
    let proportional = match &scalar {
        Some(c) => s2.reduce(&delta.sub(&monic.scale(c)))?.is_zero(f),
        None => false,
    };
    checks.push("Δ formula generates (A : B)", proportional, "compared with the generator of (0 : K)");
    let [_, pb2, _] = pfaffian_maps(f, n, u)?;
    let lp = l_prime_map(s2, pd, u)?;
    let b2lp = pb2.compose(&lp)?;
    checks.push("b2' * L' = Δ·id mod A", map_vanishes(s2, &minus_scalar_identity(&b2lp, &delta)?)?, "entries reduced in S");
    let mut lpb2 = entry_product(&lp.entries, &pb2.entries, f, n);
    for (i, row) in lpb2.iter_mut().enumerate() {
        row[i] = row[i].sub(&delta);
    }
    checks.push("L' * b2' = Δ·id mod A", all_vanish(s2, &lpb2)?, "entries reduced in S");
    Ok((delta, scalar, lp))
}

/// Only the homotopy-table identities, without the rest of the certificate.
pub fn homotopy_table_checks<F: Field>(s: &Algebra<F>, k: &Ideal<F>) -> Result<Checks> {
    let np = normalize_problem(s, k)?;
    let pd = PairingData::build(&np.alg)?;
    let mut checks = Checks::default();
    homotopy_table(&np.alg, &np.ideal, &pd, &np.units, &mut checks)?;
    Ok(checks)
}

/// Full certificate on the five-quadrics path. Requires `A ⊆ M^5`.
pub fn quadrics_certificate<F: Field>(s: &Algebra<F>, k: &Ideal<F>) -> Result<SplittingCertificate> {
    let f = s.field();
    let n = s.nvars();
    let np = normalize_problem(s, k)?;
    let (s2, k2, u) = (&np.alg, &np.ideal, &np.units);
    let pd = PairingData::build(s2)?;
    let top = s2.top();
    if top < 4 {
        return Err(Error::Hypothesis("socle degree below four".into()));
    }
    let dd = top as i64 - 2;
    let mut checks = Checks::default();

    let [pb1, pb2, pb3] = pfaffian_maps(f, n, u)?;
    checks.push("b1' * b2' = 0", pb1.compose(&pb2)?.is_zero(), "exact in P");
    checks.push("b2' * b3' = 0", pb2.compose(&pb3)?.is_zero(), "exact in P");
    let alternating = (0..5).all(|i| (0..5).all(|j| pb2.entries[i][j] == pb2.entries[j][i].neg()));
    checks.push("b2' is alternating", alternating, "");
    let pt = Algebra::polynomial(f, s2.names().to_vec(), 7)?;
    let exact = Submodule::kernel(&pt, &pb1)?.same_as(&Submodule::image(&pt, &pb2)?);
    checks.push("B_2' -> B_1' -> P is exact at B_1'", exact, "compared through degree 7");
    checks.push("B'^2 = (x, y, z)^4", square_is_fourth_power(f, u)?, "in k[x, y, z]");

    let (delta, scalar, lp) = homotopy_table(s2, k2, &pd, u, &mut checks)?;
    let delta_elem = s2.reduce(&delta)?;
    let ar = alpha_report(f, u)?;
    checks.push(
        "homogeneous α-solutions are null-homotopic",
        ar.kernel_is_null_homotopic,
        format!("solution space of dimension {}", ar.kernel_dim),
    );
    checks.push("tabulated L' solves the α-system", ar.table_solves, "");

    // B = B' ⊗ Koszul(w).
    let pfaff = Complex::from_maps(FreeModule::new(vec![0]), vec![pb1.clone(), pb2.clone(), pb3.clone()]);
    let ys: Vec<Poly<F>> = (3..n).map(|i| Poly::var(f, n, i)).collect();
    let total = if ys.is_empty() {
        pfaff
    } else {
        let kz = Complex::from_maps(FreeModule::new(vec![0]), koszul(f, n, &ys)?);
        crate::complexes::resolution::tensor_complexes(f, n, &pfaff, &kz)?
    };
    let b1 = total.maps[0].clone();
    let b2 = total.maps[1].clone();
    let b3 = total.maps[2].clone();
    let sy = ys.len();

    // c with b1'(c) = Δ and entries killed by the w's.
    let mut c = vec![Poly::zero(f, n); 5];
    if sy > 0 {
        let ann_y = Ideal::from_polys(s2, &ys)?.annihilator(s2)?;
        let rhs = polys_to_elem(s2, &pb1.target, dd, std::slice::from_ref(&delta))?;
        let allowed = |_: usize, e: i64| if e < 0 || e as usize > top { None } else { Some(ann_y.piece(e as usize).clone()) };
        c = solve_over(s2, &pb1, &rhs, &allowed)?
            .ok_or_else(|| Error::Hypothesis("Δ is not in b1'((0 : w)B_1')".into()))?;
        let cm = GradedMap::new(f, n, FreeModule::new(vec![dd]), FreeModule::new(vec![2; 5]), c.iter().map(|p| vec![p.clone()]).collect())?;
        checks.push("w·c = 0 in S", products_vanish(s2, &ys, &cm)?, "");
    }

    let mut l = GradedMap::zero(f, n, b1.source.shifted(dd), b2.source.clone());
    for i in 0..5 {
        for j in 0..5 {
            l.entries[i][j] = lp.entries[i][j].clone();
        }
    }
    for t in 0..sy {
        for (a, ca) in c.iter().enumerate() {
            l.entries[5 + a * sy + t][5 + t] = ca.clone();
        }
    }
    l.validate()?;
    let bl = b2.compose(&l)?;
    checks.push("b2 * L = Δ·id mod A", map_vanishes(s2, &minus_scalar_identity(&bl, &delta)?)?, "entries reduced in S");

    let r = s2.quotient_by(std::slice::from_ref(&delta_elem))?;
    let b_gens = b1.entries[0].clone();
    checks.push("B·I_1(L') inside (A, Δ)", products_vanish(&r, &b_gens, &lp)?, "products reduced in R");
    let b2_extra: Vec<Vec<Poly<F>>> = b2.entries[..5].iter().map(|row| row[5..].to_vec()).collect();
    let lb = entry_product(&lp.entries, &b2_extra, f, n);
    checks.push("L' * b2''' = 0 mod (A, Δ)", all_vanish(&r, &lb)?, "entries reduced in R");

    let (cone, more) = cone_data(s2, &b1, &b2, &b3)?;
    checks.extend(more);
    let ext_rows = cone.delta1.source.clone();
    let mut y_map = GradedMap::zero(f, n, lp.source.clone(), ext_rows.clone());
    for i in 0..5 {
        y_map.entries[i] = lp.entries[i].clone();
    }
    let z = Submodule::kernel(&r, &cone.delta1)?;
    let mut x = Submodule::image(&r, &cone.delta2_left)?;
    if sy > 0 {
        let src = FreeModule::new(l.source.twists[5..].to_vec());
        let mut lpp = GradedMap::zero(f, n, src, ext_rows.clone());
        for (i, row) in l.entries.iter().enumerate() {
            lpp.entries[i] = row[5..].to_vec();
        }
        lpp.validate()?;
        x = x.sum(&Submodule::image(&r, &lpp)?)?;
    }
    let y = Submodule::image(&r, &y_map)?;
    check_direct_sum(&z, &x, &y, &mut checks)?;

    // ker L̄̄' = b2'(B_2') + B·B_1'.
    let ker_l = Submodule::kernel(&r, &lp)?;
    let mut gens = Vec::new();
    for col in 0..5 {
        let entries: Vec<Poly<F>> = pb2.entries.iter().map(|row| row[col].clone()).collect();
        gens.push(polys_to_elem(&r, &lp.source, 3 + dd, &entries)?);
    }
    for a in 0..5 {
        for g in &b_gens {
            let mut col = vec![Poly::zero(f, n); 5];
            col[a] = g.clone();
            gens.push(polys_to_elem(&r, &lp.source, 2 + dd + g.degree().unwrap_or(0) as i64, &col)?);
        }
    }
    let expected = Submodule::generated(&r, &lp.source, &gens)?;
    checks.push("ker L' = b2'(B_2') + B·B_1' over R", ker_l.same_as(&expected), format!("kernel dims {:?}", ker_l.hilbert()));

    let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    let conormal = conormal_hilbert(f, &names, &canonical_quadrics(f, 3, u), 6)?;
    let summand = y.hilbert();
    let predicted = shift_dims(&conormal, dd);
    checks.push("summand matches B'/BB'", summand == predicted, format!("summand dims {summand:?}"));

    let witnesses = Witnesses {
        delta: Some(poly_json(&delta)),
        delta_scalar: scalar.map(|c| f.format(&c)),
        maps: vec![("b1'".into(), map_json(&pb1)), ("b2'".into(), map_json(&pb2)), ("L'".into(), map_json(&lp))],
        column_c: (sy > 0).then(|| c.iter().map(poly_json).collect::<Vec<PolyJson>>()),
        normalization: Some(np.json()),
        ..Witnesses::default()
    };
    Ok(SplittingCertificate::new(SplitPath::FiveQuadrics, witnesses, summand, predicted, checks))
}

/// The socle-degree generator `Δ` as an element of the normalized algebra.
pub fn normalized_delta<F: Field>(np: &NormalizedProblem<F>) -> Result<RingElem<F>> {
    let pd = PairingData::build(&np.alg)?;
    np.alg.reduce(&delta_formula(&np.alg, &pd, &np.units)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn ones<F: Field>(f: &F) -> [F::Elem; 3] {
        [f.one(), f.one(), f.one()]
    }

    #[test]
    fn pfaffian_complex_closes() {
        let f = PrimeField::new(101).unwrap();
        let u = [f.from_i64(2), f.from_i64(3), f.from_i64(5)];
        let [b1, b2, b3] = pfaffian_maps(&f, 3, &u).unwrap();
        assert!(b1.compose(&b2).unwrap().is_zero());
        assert!(b2.compose(&b3).unwrap().is_zero());
    }

    #[test]
    fn pfaffian_resolution_shape() {
        let q = Rationals;
        let (single, square) = pfaffian_betti(&q, &ones(&q)).unwrap();
        assert_eq!(single, vec![vec![0], vec![2; 5], vec![3; 5], vec![5]]);
        let shape: Vec<(usize, Vec<i64>)> = square
            .iter()
            .map(|t| {
                let mut d = t.clone();
                d.dedup();
                (t.len(), d)
            })
            .collect();
        assert_eq!(shape, vec![(1, vec![0]), (15, vec![4]), (24, vec![5]), (10, vec![6])]);
    }

    #[test]
    fn alpha_solutions_are_null_homotopic() {
        // Homogeneous solutions of both one-sided systems are b3'·θ·b1' with
        // θ in the 36-dimensional degree-7 dual piece.
        let q = Rationals;
        let r = alpha_report(&q, &ones(&q)).unwrap();
        assert_eq!((r.unknowns, r.equations), (250, 300));
        assert!(r.kernel_is_null_homotopic && r.table_solves);
        assert_eq!(r.kernel_dim, 36);
        let g2 = PrimeField::new(2).unwrap();
        let r2 = alpha_report(&g2, &ones(&g2)).unwrap();
        assert!(r2.kernel_is_null_homotopic && r2.table_solves);
        let f = PrimeField::new(101).unwrap();
        let u = [f.from_i64(2), f.from_i64(3), f.from_i64(7)];
        assert!(alpha_report(&f, &u).unwrap().table_solves);
    }

    #[test]
    fn normalization_of_canonical_form_is_orthogonal() {
        for p in [2u32, 3, 101] {
            let f = PrimeField::new(p).unwrap();
            let idx = quad_index();
            let quads: Vec<Vec<u64>> = canonical_quadrics(&f, 3, &ones(&f))
                .iter()
                .map(|q| {
                    let mut v = vec![f.zero(); 6];
                    for (k, c) in q.terms() {
                        v[idx[k]] = *c;
                    }
                    v
                })
                .collect();
            let n = normalize_quadrics(&f, &quads).unwrap();
            assert!(n.units.iter().all(|c| !f.is_zero(c)), "p = {p}");
        }
    }

    fn generic_octic(f: &PrimeField) -> Algebra<PrimeField> {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        loop {
            let form = crate::ideal::generic_dual_form(f, 3, 8, &mut rng);
            let s = crate::ideal::inverse_system(&form, variable_names(3)).unwrap();
            if s.hilbert_function() == vec![1, 3, 6, 10, 15, 10, 6, 3, 1] {
                return s;
            }
        }
    }

    #[test]
    fn generic_octic_splits_off_conormal_module() {
        let f = PrimeField::new(101).unwrap();
        let s = generic_octic(&f);
        let k = Ideal::from_polys(&s, &canonical_quadrics(&f, 3, &ones(&f))).unwrap();
        let cert = quadrics_certificate(&s, &k).unwrap();
        assert!(cert.valid, "{:?}", cert.checks.first_failure());
        let dims: Vec<usize> = cert.summand_hilbert.values().copied().collect();
        assert_eq!(dims, vec![5, 10]);
    }

    #[test]
    fn table_identities_over_the_rationals() {
        let f = crate::field::Rationals;
        let pr = crate::fixtures::fixture(&f, crate::classify::Case::G, 0).unwrap().build(&f).unwrap();
        let checks = homotopy_table_checks(&pr.s, &pr.k).unwrap();
        assert!(checks.all_passed(), "{:?}", checks.first_failure());
    }
}
