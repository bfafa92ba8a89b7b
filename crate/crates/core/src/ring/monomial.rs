use std::collections::HashMap;

/// Monomials are packed into a `u128`, eight bits per variable, so that
/// multiplication is integer addition. At most 16 variables and exponents
/// below 256 are supported.
pub type MonoKey = u128;

pub const MAX_VARS: usize = 16;

pub fn key_from_exps(exps: &[u32]) -> MonoKey {
    debug_assert!(exps.len() <= MAX_VARS);
    exps.iter().enumerate().fold(0u128, |acc, (i, &e)| {
        debug_assert!(e < 256);
        acc | ((e as u128) << (8 * i))
    })
}

pub fn exps_of(key: MonoKey, nvars: usize) -> Vec<u32> {
    (0..nvars).map(|i| ((key >> (8 * i)) & 0xff) as u32).collect()
}

pub fn exp_of(key: MonoKey, var: usize) -> u32 {
    ((key >> (8 * var)) & 0xff) as u32
}

pub fn var_key(var: usize) -> MonoKey {
    1u128 << (8 * var)
}

pub fn key_degree(key: MonoKey) -> usize {
    key.to_le_bytes().iter().map(|&b| b as usize).sum()
}

/// `a` divides `b`.
pub fn key_divides(a: MonoKey, b: MonoKey) -> bool {
    let (x, y) = (a.to_le_bytes(), b.to_le_bytes());
    x.iter().zip(y.iter()).all(|(p, q)| p <= q)
}

/// `b / a`, assuming `a | b`.
pub fn key_div(b: MonoKey, a: MonoKey) -> MonoKey {
    b - a
}

/// All monomials of degree `d` in `n` variables, in graded-lex order with
/// the first variable largest (descending).
pub fn monomials_of_degree(n: usize, d: usize) -> Vec<MonoKey> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    fn rec(i: usize, left: usize, exps: &mut Vec<u32>, out: &mut Vec<MonoKey>) {
        let n = exps.len();
        if i + 1 == n {
            exps[i] = left as u32;
            out.push(key_from_exps(exps));
            return;
        }
        for e in (0..=left).rev() {
            exps[i] = e as u32;
            rec(i + 1, left - e, exps, out);
        }
        exps[i] = 0;
    }
    if n == 0 {
        if d == 0 {
            out.push(0);
        }
        return out;
    }
    rec(0, d, &mut exps, &mut out);
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as usize
}

/// `dim_k [k[x_1..x_n]]_d`.
pub fn poly_dim(n: usize, d: usize) -> usize {
    if n == 0 {
        return usize::from(d == 0);
    }
    binomial(n - 1 + d, d)
}

/// Per-degree monomial lists with reverse lookup.
#[derive(Clone, Debug)]
pub struct MonomialTable {
    nvars: usize,
    by_degree: Vec<Vec<MonoKey>>,
    index: Vec<HashMap<MonoKey, usize>>,
}

impl MonomialTable {
    pub fn new(nvars: usize, max_degree: usize) -> Self {
        let mut t = MonomialTable { nvars, by_degree: Vec::new(), index: Vec::new() };
        t.extend_to(max_degree);
        t
    }

    pub fn extend_to(&mut self, max_degree: usize) {
        while self.by_degree.len() <= max_degree {
            let d = self.by_degree.len();
            let mons = monomials_of_degree(self.nvars, d);
            let idx = mons.iter().enumerate().map(|(i, &k)| (k, i)).collect();
            self.by_degree.push(mons);
            self.index.push(idx);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn max_degree(&self) -> usize {
        self.by_degree.len() - 1
    }
    pub fn of_degree(&self, d: usize) -> &[MonoKey] {
        &self.by_degree[d]
    }
    pub fn count(&self, d: usize) -> usize {
        self.by_degree.get(d).map_or(0, |v| v.len())
    }
    pub fn index_of(&self, d: usize, key: MonoKey) -> Option<usize> {
        self.index.get(d)?.get(&key).copied()
    }
}

pub fn format_monomial(key: MonoKey, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, name) in names.iter().enumerate() {
        let e = exp_of(key, i);
        match e {
            0 => {}
            1 => parts.push(name.clone()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order_three_vars() {
        let m = monomials_of_degree(3, 2);
        let e: Vec<Vec<u32>> = m.iter().map(|&k| exps_of(k, 3)).collect();
        assert_eq!(
            e,
            vec![vec![2, 0, 0], vec![1, 1, 0], vec![1, 0, 1], vec![0, 2, 0], vec![0, 1, 1], vec![0, 0, 2]]
        );
    }

    #[test]
    fn counts_match_binomials() {
        for n in 1..5 {
            for d in 0..8 {
                assert_eq!(monomials_of_degree(n, d).len(), poly_dim(n, d));
            }
        }
    }

    #[test]
    fn key_arithmetic() {
        let a = key_from_exps(&[1, 2, 0]);
        let b = key_from_exps(&[0, 1, 3]);
        assert_eq!(exps_of(a + b, 3), vec![1, 3, 3]);
        assert_eq!(key_degree(a + b), 7);
        assert!(key_divides(a, a + b));
        assert!(!key_divides(a, b));
    }
}
