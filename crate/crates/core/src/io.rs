//! Problem files (a line-oriented text form and an equivalent JSON form),
//! conversion into algebras and ideals, and the versioned report envelope.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{format_rational, parse_rational, Field, FieldSpec};
use crate::ideal::{inverse_system, Ideal};
use crate::ring::monomial::key_from_exps;
use crate::ring::{Algebra, Poly};

pub const SCHEMA_VERSION: u32 = 1;

/// Polynomial with rational coefficients, independent of the working field.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RatPoly {
    pub terms: BTreeMap<Vec<u32>, BigRational>,
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Errors not tied to one line of the input.
fn structural(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

impl RatPoly {
    /// Parses sums of terms `c*x^a*y^b`, with `+`/`-` between terms and
    /// optional whitespace. Coefficients may be fractions.
    pub fn parse(text: &str, vars: &[String], line: usize) -> Result<RatPoly> {
        let mut terms: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(perr(line, "empty polynomial"));
        }
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (i, ch) in s.chars().enumerate() {
            if (ch == '+' || ch == '-') && !(cur.is_empty() && i == 0) {
                if cur.is_empty() {
                    return Err(perr(line, format!("dangling sign in `{text}`")));
                }
                pieces.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if ch == '-' {
                neg = true;
            } else if ch != '+' {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(perr(line, format!("dangling sign in `{text}`")));
        }
        pieces.push((neg, cur));
        for (neg, body) in pieces {
            let mut coeff = BigRational::one();
            let mut exps = vec![0u32; vars.len()];
            for factor in body.split('*') {
                if factor.is_empty() {
                    return Err(perr(line, format!("empty factor in `{text}`")));
                }
                if factor.starts_with(|c: char| c.is_ascii_digit()) {
                    coeff *= parse_rational(factor).map_err(|_| perr(line, format!("bad coefficient `{factor}`")))?;
                    continue;
                }
                let (name, e) = match factor.split_once('^') {
                    Some((v, e)) => (v, e.parse::<u32>().map_err(|_| perr(line, format!("bad exponent in `{factor}`")))?),
                    None => (factor, 1),
                };
                let i = vars.iter().position(|v| v == name).ok_or_else(|| perr(line, format!("unknown variable `{name}`")))?;
                exps[i] += e;
            }
            if neg {
                coeff = -coeff;
            }
            let slot = terms.entry(exps).or_insert_with(BigRational::zero);
            *slot += coeff;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(RatPoly { terms })
    }

    pub fn from_poly<F: Field>(p: &Poly<F>) -> RatPoly {
        let f = p.field();
        let n = p.nvars();
        let terms = p
            .terms()
            .iter()
            .map(|(k, c)| (crate::ring::monomial::exps_of(*k, n), f.to_rational(c)))
            .collect();
        RatPoly { terms }
    }

    pub fn to_poly<F: Field>(&self, f: &F, nvars: usize) -> Result<Poly<F>> {
        let mut terms = Vec::new();
        for (e, c) in &self.terms {
            if e.len() != nvars {
                return Err(Error::Dimension("term has the wrong number of exponents".into()));
            }
            let c = f.from_rational(c).map_err(|_| Error::Config(format!("coefficient {} is undefined over {}", format_rational(c), f.spec())))?;
            if e.iter().any(|&x| x > 255) {
                return Err(Error::Config("exponents above 255 are not supported".into()));
            }
            terms.push((key_from_exps(e), c));
        }
        Ok(Poly::from_terms(f, nvars, terms))
    }

    /// Terms in descending degree, then descending exponent vectors.
    pub fn format(&self, vars: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| (b.iter().sum::<u32>(), *b).cmp(&(a.iter().sum::<u32>(), *a)));
        let mut out = String::new();
        for (i, k) in keys.into_iter().enumerate() {
            let c = &self.terms[k];
            let neg = c < &BigRational::zero();
            let mag = format_rational(&c.abs());
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = k
                .iter()
                .zip(vars)
                .filter(|(e, _)| **e > 0)
                .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            match (mono.is_empty(), mag == "1") {
                (true, _) => out.push_str(&mag),
                (false, true) => out.push_str(&mono.join("*")),
                (false, false) => {
                    let _ = write!(out, "{mag}*{}", mono.join("*"));
                }
            }
        }
        out
    }
}

/// A problem: the field, the variables, the Gorenstein algebra `S` (either
/// by defining generators `A` or by a dual form), and one of `J` or `K`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProblemFile {
    pub field: FieldSpec,
    pub vars: Vec<String>,
    pub truncate: Option<usize>,
    pub seed: Option<u64>,
    pub a: Vec<RatPoly>,
    pub dual: Option<RatPoly>,
    pub j: Option<Vec<RatPoly>>,
    pub k: Option<Vec<RatPoly>>,
}

/// JSON shape of a problem file; polynomials are strings in the text syntax.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemJson {
    pub field: String,
    pub vars: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncate: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, rename = "A", skip_serializing_if = "Vec::is_empty")]
    pub a: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual: Option<String>,
    #[serde(default, rename = "J", skip_serializing_if = "Option::is_none")]
    pub j: Option<Vec<String>>,
    #[serde(default, rename = "K", skip_serializing_if = "Option::is_none")]
    pub k: Option<Vec<String>>,
}

impl ProblemFile {
    fn validate(&self) -> Result<()> {
        if self.vars.is_empty() {
            return Err(structural("no variables declared"));
        }
        let mut seen = std::collections::HashSet::new();
        for v in &self.vars {
            if !v.starts_with(|c: char| c.is_ascii_alphabetic()) || !v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(structural(format!("bad variable name `{v}`")));
            }
            if !seen.insert(v) {
                return Err(structural(format!("variable `{v}` declared twice")));
            }
        }
        if self.a.is_empty() == self.dual.is_none() {
            return Err(structural("give exactly one of an `A` block or a `dual` block"));
        }
        if self.j.is_some() == self.k.is_some() {
            return Err(structural("give exactly one of a `J` block or a `K` block"));
        }
        Ok(())
    }

    /// Parses the text form. Lines: `field q|p:N`, `vars x y ...`,
    /// `truncate N`, `seed N`, and blocks `A`, `J`, `K`, `dual` holding one
    /// polynomial per line and closed by `end`. `#` starts a comment.
    pub fn parse_text(text: &str) -> Result<ProblemFile> {
        let mut field = None;
        let mut vars: Option<Vec<String>> = None;
        let mut truncate = None;
        let mut seed = None;
        let mut blocks: BTreeMap<String, Vec<RatPoly>> = BTreeMap::new();
        let mut open: Option<(String, usize)> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap().trim();
            if body.is_empty() {
                continue;
            }
            if let Some((name, _)) = &open {
                if body == "end" {
                    open = None;
                    continue;
                }
                let vs = vars.as_ref().ok_or_else(|| perr(line, "`vars` must come before polynomial blocks"))?;
                let p = RatPoly::parse(body, vs, line)?;
                blocks.get_mut(name).unwrap().push(p);
                continue;
            }
            let (key, rest) = body.split_once(char::is_whitespace).map_or((body, ""), |(k, r)| (k, r.trim()));
            match key {
                "field" => field = Some(FieldSpec::parse(rest).map_err(|e| perr(line, e.to_string()))?),
                "vars" => vars = Some(rest.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).map(String::from).collect()),
                "truncate" => truncate = Some(rest.parse().map_err(|_| perr(line, format!("bad truncation `{rest}`")))?),
                "seed" => seed = Some(rest.parse().map_err(|_| perr(line, format!("bad seed `{rest}`")))?),
                "A" | "J" | "K" | "dual" => {
                    if !rest.is_empty() {
                        return Err(perr(line, format!("unexpected text after `{key}`")));
                    }
                    if blocks.insert(key.to_string(), Vec::new()).is_some() {
                        return Err(perr(line, format!("block `{key}` given twice")));
                    }
                    open = Some((key.to_string(), line));
                }
                _ => return Err(perr(line, format!("unknown keyword `{key}`"))),
            }
        }
        if let Some((name, line)) = open {
            return Err(perr(line, format!("block `{name}` is not closed by `end`")));
        }
        let dual = match blocks.remove("dual") {
            Some(mut v) if v.len() == 1 => Some(v.remove(0)),
            Some(_) => return Err(structural("the `dual` block holds exactly one form")),
            None => None,
        };
        let p = ProblemFile {
            field: field.ok_or_else(|| structural("missing `field` line"))?,
            vars: vars.ok_or_else(|| structural("missing `vars` line"))?,
            truncate,
            seed,
            a: blocks.remove("A").unwrap_or_default(),
            dual,
            j: blocks.remove("J"),
            k: blocks.remove("K"),
        };
        p.validate()?;
        Ok(p)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "field {}", self.field);
        let _ = writeln!(out, "vars {}", self.vars.join(" "));
        if let Some(t) = self.truncate {
            let _ = writeln!(out, "truncate {t}");
        }
        if let Some(s) = self.seed {
            let _ = writeln!(out, "seed {s}");
        }
        let mut block = |name: &str, ps: &[RatPoly]| {
            let _ = writeln!(out, "{name}");
            for p in ps {
                let _ = writeln!(out, "{}", p.format(&self.vars));
            }
            let _ = writeln!(out, "end");
        };
        if !self.a.is_empty() {
            block("A", &self.a);
        }
        if let Some(d) = &self.dual {
            block("dual", std::slice::from_ref(d));
        }
        if let Some(j) = &self.j {
            block("J", j);
        }
        if let Some(k) = &self.k {
            block("K", k);
        }
        out
    }

    pub fn to_json(&self) -> ProblemJson {
        let fmt = |ps: &[RatPoly]| ps.iter().map(|p| p.format(&self.vars)).collect::<Vec<_>>();
        ProblemJson {
            field: self.field.to_string(),
            vars: self.vars.clone(),
            truncate: self.truncate,
            seed: self.seed,
            a: fmt(&self.a),
            dual: self.dual.as_ref().map(|d| d.format(&self.vars)),
            j: self.j.as_deref().map(fmt),
            k: self.k.as_deref().map(fmt),
        }
    }

    pub fn from_json(j: &ProblemJson) -> Result<ProblemFile> {
        let vars = j.vars.clone();
        let one = |p: &String| RatPoly::parse(p, &vars, 0).map_err(|e| match e {
            Error::Parse { msg, .. } => structural(msg),
            other => other,
        });
        let parse = |ps: &[String]| ps.iter().map(one).collect::<Result<Vec<_>>>();
        let p = ProblemFile {
            field: FieldSpec::parse(&j.field)?,
            vars: vars.clone(),
            truncate: j.truncate,
            seed: j.seed,
            a: parse(&j.a)?,
            dual: j.dual.as_ref().map(one).transpose()?,
            j: j.j.as_deref().map(parse).transpose()?,
            k: j.k.as_deref().map(parse).transpose()?,
        };
        p.validate()?;
        Ok(p)
    }

    /// Accepts either form: input whose first non-blank character is `{` is
    /// read as JSON.
    pub fn parse(text: &str) -> Result<ProblemFile> {
        if text.trim_start().starts_with('{') {
            let j: ProblemJson = serde_json::from_str(text).map_err(|e| perr(e.line(), e.to_string()))?;
            Self::from_json(&j)
        } else {
            Self::parse_text(text)
        }
    }

    pub fn build<F: Field>(&self, f: &F) -> Result<Problem<F>> {
        let n = self.vars.len();
        let polys = |ps: &[RatPoly]| ps.iter().map(|p| p.to_poly(f, n)).collect::<Result<Vec<_>>>();
        let s = match &self.dual {
            Some(d) => inverse_system(&d.to_poly(f, n)?, self.vars.clone())?,
            None => {
                let a = polys(&self.a)?;
                match self.truncate {
                    Some(t) => Algebra::from_generators(f, self.vars.clone(), &a, t)?,
                    None => artinian_quotient(f, &self.vars, &a)?,
                }
            }
        };
        let (j, k) = match (&self.j, &self.k) {
            (Some(j), None) => {
                let j = Ideal::from_polys(&s, &polys(j)?)?;
                let k = j.annihilator(&s)?;
                (j, k)
            }
            (None, Some(k)) => {
                let k = Ideal::from_polys(&s, &polys(k)?)?;
                let j = k.annihilator(&s)?;
                (j, k)
            }
            _ => return Err(structural("give exactly one of a `J` block or a `K` block")),
        };
        Ok(Problem { s, j, k })
    }
}

/// `P/A` with the degree bound doubled until the quotient is Artinian.
fn artinian_quotient<F: Field>(f: &F, vars: &[String], a: &[Poly<F>]) -> Result<Algebra<F>> {
    let start = a.iter().filter_map(|p| p.degree()).max().unwrap_or(1).max(1);
    let mut bound = 2 * start;
    loop {
        match Algebra::from_generators(f, vars.to_vec(), a, bound) {
            Err(Error::Hypothesis(_)) if bound < 256 => bound *= 2,
            other => return other,
        }
    }
}

/// `S`, `J` and `K = (0 : J)` built over a concrete field.
#[derive(Clone, Debug)]
pub struct Problem<F: Field> {
    pub s: Algebra<F>,
    pub j: Ideal<F>,
    pub k: Ideal<F>,
}

/// Envelope shared by every JSON report.
#[derive(Clone, Debug, Serialize)]
pub struct Report<T: Serialize> {
    pub schema_version: u32,
    pub command: String,
    pub field: String,
    pub result: T,
}

impl<T: Serialize> Report<T> {
    pub fn new(command: &str, field: &FieldSpec, result: T) -> Self {
        Report { schema_version: SCHEMA_VERSION, command: command.into(), field: field.to_string(), result }
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Invariant(format!("serialization failed: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    const SAMPLE: &str = "# Teter example\nfield p:101\nvars x y\nA\nx^3\ny^3\nend\nK\nx\ny\nend\n";

    #[test]
    fn polynomial_syntax() {
        let v = names(&["x", "y"]);
        let p = RatPoly::parse("3*x^2*y - 1/2*y^3 + x*x - 2", &v, 1).unwrap();
        assert_eq!(p.terms.len(), 4);
        assert_eq!(p.terms[&vec![2, 0]], BigRational::one());
        assert_eq!(p.format(&v), "3*x^2*y - 1/2*y^3 + x^2 - 2");
        assert_eq!(RatPoly::parse(&p.format(&v), &v, 1).unwrap(), p);
        assert!(RatPoly::parse("x^2 + z", &v, 4).is_err());
        assert!(RatPoly::parse("x +", &v, 4).is_err());
        assert_eq!(RatPoly::parse("-x + x", &v, 1).unwrap().format(&v), "0");
    }

    #[test]
    fn text_round_trip() {
        let p = ProblemFile::parse(SAMPLE).unwrap();
        assert_eq!(p.field, FieldSpec::Prime(101));
        assert_eq!(ProblemFile::parse(&p.to_text()).unwrap(), p);
    }

    #[test]
    fn json_round_trip() {
        let p = ProblemFile::parse(SAMPLE).unwrap();
        let js = serde_json::to_string(&p.to_json()).unwrap();
        assert_eq!(ProblemFile::parse(&js).unwrap(), p);
    }

    #[test]
    fn malformed_inputs_name_the_line() {
        let e = ProblemFile::parse("field p:101\nvars x y\nA\nx^3\nw\nend\nK\nx\nend\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 5, .. }), "{e}");
        assert!(ProblemFile::parse("field p:100\nvars x\n").is_err());
        assert!(ProblemFile::parse("field q\nvars x y\nA\nx^2\nend\n").is_err());
        assert!(ProblemFile::parse("field q\nvars x y\nA\nx^2\ny^2\nend\nK\nx\n").is_err());
    }

    #[test]
    fn builds_over_both_fields() {
        let p = ProblemFile::parse(SAMPLE).unwrap();
        let f = PrimeField::new(101).unwrap();
        let pr = p.build(&f).unwrap();
        assert_eq!(pr.s.hilbert_function(), vec![1, 2, 3, 2, 1]);
        assert_eq!(pr.j.quotient_hf(&pr.s).iter().sum::<usize>(), 8);
        let pr = p.build(&Rationals).unwrap();
        assert_eq!(pr.k.colength(&pr.s), 1);
    }

    #[test]
    fn fractions_fail_in_the_characteristic() {
        let text = "field p:5\nvars x y\nA\nx^3\n1/5*y^3\nend\nK\nx\ny\nend\n";
        let p = ProblemFile::parse(text).unwrap();
        assert!(matches!(p.build(&PrimeField::new(5).unwrap()), Err(Error::Config(_))));
    }

    #[test]
    fn truncation_search_finds_artinian_bound() {
        let f = PrimeField::new(7).unwrap();
        let v = names(&["x", "y"]);
        let a = [Poly::var(&f, 2, 0).pow(9), Poly::var(&f, 2, 1).pow(9)];
        assert_eq!(artinian_quotient(&f, &v, &a).unwrap().top(), 16);
    }
}
