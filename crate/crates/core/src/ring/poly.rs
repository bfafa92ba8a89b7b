use std::collections::BTreeMap;

use crate::field::Field;

use super::monomial::{exp_of, format_monomial, key_degree, var_key, MonoKey};

/// Sparse polynomial in the full polynomial ring (no truncation).
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<F: Field> {
    field: F,
    nvars: usize,
    terms: BTreeMap<MonoKey, F::Elem>,
}

impl<F: Field> Poly<F> {
    pub fn zero(field: &F, nvars: usize) -> Self {
        Poly { field: field.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: &F, nvars: usize, c: F::Elem) -> Self {
        Self::monomial(field, nvars, 0, c)
    }

    pub fn monomial(field: &F, nvars: usize, key: MonoKey, c: F::Elem) -> Self {
        let mut p = Self::zero(field, nvars);
        if !field.is_zero(&c) {
            p.terms.insert(key, c);
        }
        p
    }

    pub fn var(field: &F, nvars: usize, i: usize) -> Self {
        Self::monomial(field, nvars, var_key(i), field.one())
    }

    pub fn from_terms<I: IntoIterator<Item = (MonoKey, F::Elem)>>(field: &F, nvars: usize, it: I) -> Self {
        let mut p = Self::zero(field, nvars);
        for (k, c) in it {
            p.add_term(k, &c);
        }
        p
    }

    /// Linear form `sum c_i x_i`.
    pub fn linear(field: &F, coeffs: &[F::Elem]) -> Self {
        Self::from_terms(field, coeffs.len(), coeffs.iter().enumerate().map(|(i, c)| (var_key(i), c.clone())))
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn terms(&self) -> &BTreeMap<MonoKey, F::Elem> {
        &self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn coeff(&self, key: MonoKey) -> F::Elem {
        self.terms.get(&key).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, key: MonoKey, c: &F::Elem) {
        let f = &self.field;
        if f.is_zero(c) {
            return;
        }
        let e = self.terms.entry(key).or_insert_with(|| f.zero());
        *e = f.add(e, c);
        if f.is_zero(e) {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        Poly { field: f.clone(), nvars: self.nvars, terms: self.terms.iter().map(|(k, c)| (*k, f.neg(c))).collect() }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        if f.is_zero(c) {
            return Self::zero(f, self.nvars);
        }
        Poly { field: f.clone(), nvars: self.nvars, terms: self.terms.iter().map(|(k, a)| (*k, f.mul(a, c))).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        let mut out = Self::zero(f, self.nvars);
        for (ka, a) in &self.terms {
            for (kb, b) in &other.terms {
                out.add_term(ka + kb, &f.mul(a, b));
            }
        }
        out
    }

    pub fn mul_monomial(&self, key: MonoKey) -> Self {
        Poly { field: self.field.clone(), nvars: self.nvars, terms: self.terms.iter().map(|(k, c)| (k + key, c.clone())).collect() }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut out = Self::constant(&self.field, self.nvars, self.field.one());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|&k| key_degree(k)).max()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(|&k| key_degree(k)).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.min_degree()
    }

    pub fn homogeneous_part(&self, d: usize) -> Self {
        Poly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(k, _)| key_degree(**k) == d).map(|(k, c)| (*k, c.clone())).collect(),
        }
    }

    /// Replace variable `x_j` by `images[j]`.
    pub fn substitute(&self, images: &[Poly<F>]) -> Poly<F> {
        let f = &self.field;
        let n_out = images.first().map_or(self.nvars, |p| p.nvars);
        let mut out = Poly::zero(f, n_out);
        let mut powers: Vec<Vec<Poly<F>>> = vec![Vec::new(); self.nvars];
        for (k, c) in &self.terms {
            let mut term = Poly::constant(f, n_out, c.clone());
            for (j, pw) in powers.iter_mut().enumerate() {
                let e = exp_of(*k, j) as usize;
                if e == 0 {
                    continue;
                }
                while pw.len() <= e {
                    let next = match pw.last() {
                        None => Poly::constant(f, n_out, f.one()),
                        Some(p) => p.mul(&images[j]),
                    };
                    pw.push(next);
                }
                term = term.mul(&pw[e]);
            }
            out = out.add(&term);
        }
        out
    }

    /// Human-readable form, terms in descending graded-lex order.
    pub fn format(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut keys: Vec<MonoKey> = self.terms.keys().copied().collect();
        keys.sort_by(|a, b| graded_lex_cmp(*b, *a, self.nvars));
        let mut s = String::new();
        for (i, k) in keys.iter().enumerate() {
            let c = self.field.format(&self.terms[k]);
            let (neg, mag) = match c.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, c),
            };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = format_monomial(*k, names);
            if mono == "1" {
                s.push_str(&mag);
            } else if mag == "1" {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{mag}*{mono}"));
            }
        }
        s
    }
}

/// Compare by degree, then lexicographically with the first variable largest.
pub fn graded_lex_cmp(a: MonoKey, b: MonoKey, nvars: usize) -> std::cmp::Ordering {
    key_degree(a).cmp(&key_degree(b)).then_with(|| {
        for i in 0..nvars {
            let c = exp_of(a, i).cmp(&exp_of(b, i));
            if c != std::cmp::Ordering::Equal {
                return c;
            }
        }
        std::cmp::Ordering::Equal
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn substitution_of_square() {
        let q = Rationals;
        let x = Poly::var(&q, 2, 0);
        let y = Poly::var(&q, 2, 1);
        let p = x.mul(&x);
        let img = vec![x.add(&y), y.clone()];
        let s = p.substitute(&img);
        let names = vec!["x".to_string(), "y".to_string()];
        assert_eq!(s.format(&names), "x^2 + 2*x*y + y^2");
    }

    #[test]
    fn format_signs() {
        let q = Rationals;
        let x = Poly::var(&q, 2, 0);
        let y = Poly::var(&q, 2, 1);
        let p = x.sub(&y.scale(&q.from_i64(3)));
        assert_eq!(p.format(&["a".into(), "b".into()]), "a - 3*b");
    }
}
