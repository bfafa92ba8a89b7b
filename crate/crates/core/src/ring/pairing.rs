use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;

use super::algebra::{Algebra, RingElem};
use super::monomial::{key_div, key_divides, monomials_of_degree, MonoKey};

/// Dual bases for the socle pairing of a Gorenstein algebra: `duals[i][m]` is
/// the element `α_m` of degree `s - i` with `m'·α_m = δ_{m m'}·socle` for
/// monomials `m, m'` of degree `i`.
#[derive(Clone, Debug)]
pub struct PairingData<F: Field> {
    host: u64,
    pub socle_degree: usize,
    pub socle: RingElem<F>,
    pub duals: Vec<BTreeMap<MonoKey, RingElem<F>>>,
}

impl<F: Field> PairingData<F> {
    /// Dual bases in degrees `0..=min(3, s)`. Requires the degree-`i`
    /// monomials to be independent, i.e. `v(S) > min(3, s)`.
    pub fn build(alg: &Algebra<F>) -> Result<Self> {
        if alg.is_truncated() || !alg.is_gorenstein() {
            return Err(Error::Hypothesis("pairing data needs a Gorenstein algebra".into()));
        }
        let s = alg.top();
        let imax = s.min(3);
        if alg.initial_degree() <= imax {
            return Err(Error::Hypothesis(format!("pairing data needs v(S) >= {}", imax + 1)));
        }
        let f = alg.field();
        let socle = alg.basis_elem(s, 0);
        let mut duals = Vec::new();
        for i in 0..=imax {
            let mons = monomials_of_degree(alg.nvars(), i);
            let n = mons.len();
            if alg.dim(s - i) != n {
                return Err(Error::Invariant(format!("dim S_{} differs from dim S_{}", s - i, i)));
            }
            // gram[m][j] = socle coefficient of m · b_j for the basis b_j of S_{s-i}.
            let mut gram = Matrix::zeros(f, n, n);
            for (r, &m) in mons.iter().enumerate() {
                let mc = alg.monomial_coords(i, m);
                let me = alg.elem(i, mc)?;
                for j in 0..n {
                    let p = alg.mul_basis(&me, s - i, j);
                    gram.set(r, j, p[0].clone());
                }
            }
            let inv = gram.inverse().map_err(|_| Error::Invariant(format!("singular pairing in degree {i}")))?;
            let mut map = BTreeMap::new();
            for (r, &m) in mons.iter().enumerate() {
                let coords: Vec<F::Elem> = (0..n).map(|j| inv.get(j, r).clone()).collect();
                map.insert(m, alg.elem(s - i, coords)?);
            }
            duals.push(map);
        }
        Ok(PairingData { host: alg.id(), socle_degree: s, socle, duals })
    }

    pub fn alpha(&self, m: MonoKey) -> Option<&RingElem<F>> {
        let d = super::monomial::key_degree(m);
        self.duals.get(d)?.get(&m)
    }

    /// Checks `m'·α_m = α_{m/m'}` when `m' | m` and `0` otherwise, for all
    /// monomials of degree at most the stored range.
    pub fn verify(&self, alg: &Algebra<F>) -> Result<bool> {
        if alg.id() != self.host {
            return Err(Error::HostMismatch);
        }
        let f = alg.field();
        for (i, map) in self.duals.iter().enumerate() {
            for (&m, alpha) in map {
                for ip in 0..=i {
                    for mp in monomials_of_degree(alg.nvars(), ip) {
                        let mc = alg.elem(ip, alg.monomial_coords(ip, mp))?;
                        let prod = alg.mul(&mc, alpha)?;
                        let ok = if key_divides(mp, m) {
                            prod == *self.alpha(key_div(m, mp)).expect("quotient in range")
                        } else {
                            prod.is_zero(f)
                        };
                        if !ok {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::ring::Poly;

    #[test]
    fn one_variable_cube() {
        let q = Rationals;
        let s = Algebra::from_generators(&q, vec!["x".into()], &[Poly::var(&q, 1, 0).pow(3)], 4).unwrap();
        let pd = PairingData::build(&s).unwrap();
        let ax = pd.alpha(super::super::monomial::var_key(0)).unwrap();
        assert_eq!(ax.deg, 1);
        assert_eq!(*ax, s.var(0));
        assert!(pd.verify(&s).unwrap());
    }
}
