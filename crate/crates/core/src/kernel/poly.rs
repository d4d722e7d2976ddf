//! Polynomial test functions and complex literals.
//!
//! Syntax: a sum of terms `c*z1^a1*...*zn^an`. A coefficient is a real or
//! imaginary number (`2`, `-0.5`, `3i`, `1e-3`) or a parenthesised complex
//! literal such as `(0.5+2i)`. Factors may come in any order and repeat.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `Σ c_a z^a` on `ℂⁿ`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyFunction {
    n: usize,
    terms: BTreeMap<Vec<u32>, Complex64>,
}

impl PolyFunction {
    pub fn zero(n: usize) -> Self {
        PolyFunction {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Complex64) -> Self {
        Self::monomial(n, vec![0; n], c)
    }

    pub fn monomial(n: usize, exponents: Vec<u32>, c: Complex64) -> Self {
        let mut f = Self::zero(n);
        f.add_term(exponents, c);
        f
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, c: Complex64) {
        assert_eq!(exponents.len(), self.n, "exponent vector length");
        let e = self.terms.entry(exponents.clone()).or_default();
        *e += c;
        if *e == Complex64::default() {
            self.terms.remove(&exponents);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Complex64)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|a| a.iter().sum()).max().unwrap_or(0)
    }

    pub fn eval(&self, z: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(a, c)| {
                a.iter()
                    .zip(z)
                    .fold(*c, |acc, (&k, zj)| acc * zj.powu(k))
            })
            .sum()
    }

    pub fn add(&self, other: &PolyFunction) -> PolyFunction {
        let mut out = self.clone();
        for (a, c) in other.terms() {
            out.add_term(a.clone(), *c);
        }
        out
    }

    pub fn scale(&self, c: Complex64) -> PolyFunction {
        let mut out = Self::zero(self.n);
        for (a, v) in self.terms() {
            out.add_term(a.clone(), v * c);
        }
        out
    }

    /// Parses `text` as a polynomial in `z1..zn`.
    pub fn parse(text: &str, n: usize) -> Result<PolyFunction> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut f = PolyFunction::zero(n);
        for (sign, term) in split_top_level(&s)? {
            let (exps, c) = parse_term(term, n)?;
            f.add_term(exps, c * sign);
        }
        Ok(f)
    }
}

impl fmt::Display for PolyFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (a, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, "+")?;
            }
            write!(f, "({}{:+}i)", c.re, c.im)?;
            for (j, &e) in a.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*z{}", j + 1)?,
                    _ => write!(f, "*z{}^{e}", j + 1)?,
                }
            }
        }
        Ok(())
    }
}

/// Splits at `+`/`-` outside parentheses and not inside an exponent
/// (`1e-3`). Returns the sign of each term.
fn split_top_level(s: &str) -> Result<Vec<(f64, &str)>> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut sign = 1.0;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse(format!("unbalanced ')' in {s:?}")));
                }
            }
            b'+' | b'-' if depth == 0 => {
                let after_exponent = i > 0
                    && matches!(bytes[i - 1], b'e' | b'E')
                    && i > 1
                    && bytes[i - 2].is_ascii_digit();
                if after_exponent {
                    continue;
                }
                if i > start {
                    out.push((sign, &s[start..i]));
                } else if i > 0 {
                    return Err(Error::Parse(format!("empty term in {s:?}")));
                }
                sign = if b == b'-' { -1.0 } else { 1.0 };
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced '(' in {s:?}")));
    }
    if start >= s.len() {
        return Err(Error::Parse(format!("dangling sign in {s:?}")));
    }
    out.push((sign, &s[start..]));
    Ok(out)
}

fn parse_term(term: &str, n: usize) -> Result<(Vec<u32>, Complex64)> {
    let mut exps = vec![0u32; n];
    let mut c = Complex64::new(1.0, 0.0);
    for factor in split_factors(term)? {
        if let Some(rest) = factor.strip_prefix('z') {
            let (var, power) = match rest.split_once('^') {
                Some((v, p)) => (v, p.parse::<u32>().map_err(|_| bad_factor(factor))?),
                None => (rest, 1),
            };
            let j: usize = var.parse().map_err(|_| bad_factor(factor))?;
            if j == 0 || j > n {
                return Err(Error::Parse(format!("variable z{j} outside z1..z{n}")));
            }
            exps[j - 1] += power;
        } else if let Some(inner) = factor.strip_prefix('(').and_then(|f| f.strip_suffix(')')) {
            c *= parse_complex_literal(inner)?;
        } else {
            c *= parse_complex_literal(factor)?;
        }
    }
    Ok((exps, c))
}

fn split_factors(term: &str) -> Result<Vec<&str>> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (i, b) in term.bytes().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'*' if depth == 0 => {
                out.push(&term[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&term[start..]);
    if out.iter().any(|f| f.is_empty()) {
        return Err(Error::Parse(format!("empty factor in {term:?}")));
    }
    Ok(out)
}

fn bad_factor(f: &str) -> Error {
    Error::Parse(format!("cannot read factor {f:?}"))
}

/// Reads `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i`.
pub fn parse_complex_literal(text: &str) -> Result<Complex64> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("cannot read complex number {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    let bytes = s.as_bytes();
    // split before a sign that is neither leading nor part of an exponent
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re_part, im_part) = match split {
        Some(i) if s.ends_with('i') => (&s[..i], &s[i..]),
        _ if s.ends_with('i') => ("", s.as_str()),
        _ => (s.as_str(), ""),
    };
    let re = if re_part.is_empty() {
        0.0
    } else {
        parse_real(re_part).ok_or_else(bad)?
    };
    let im = if im_part.is_empty() {
        0.0
    } else {
        let body = &im_part[..im_part.len() - 1];
        match body {
            "" | "+" => 1.0,
            "-" => -1.0,
            _ => parse_real(body).ok_or_else(bad)?,
        }
    };
    Ok(Complex64::new(re, im))
}

fn parse_real(s: &str) -> Option<f64> {
    let v: f64 = s.parse().ok()?;
    v.is_finite().then_some(v)
}

/// Comma-separated complex literals.
pub fn parse_point(text: &str) -> Result<Vec<Complex64>> {
    text.split(',').map(parse_complex_literal).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn literals() {
        assert_eq!(parse_complex_literal("0.5").unwrap(), c(0.5, 0.0));
        assert_eq!(parse_complex_literal("-0.4").unwrap(), c(-0.4, 0.0));
        assert_eq!(parse_complex_literal("2i").unwrap(), c(0.0, 2.0));
        assert_eq!(parse_complex_literal("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex_literal("0.5+2i").unwrap(), c(0.5, 2.0));
        assert_eq!(parse_complex_literal("1e-3-1.5e2i").unwrap(), c(1e-3, -150.0));
        assert!(parse_complex_literal("abc").is_err());
        assert!(parse_complex_literal("").is_err());
    }

    #[test]
    fn polynomial_from_text() {
        let f = PolyFunction::parse("1+z1^2*z2^3", 2).unwrap();
        let v = f.eval(&[c(0.3, 0.0), c(-0.4, 0.0)]);
        assert!((v - c(0.99424, 0.0)).norm() < 1e-15);
        let g = PolyFunction::parse("(0.5+2i)*z1 - 3*z2*z2 + 2.5i", 2).unwrap();
        assert_eq!(g.terms().count(), 3);
        let v = g.eval(&[c(1.0, 0.0), c(1.0, 0.0)]);
        assert!((v - c(-2.5, 4.5)).norm() < 1e-15);
        assert_eq!(PolyFunction::parse("z1^2*z1", 1).unwrap().degree(), 3);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(PolyFunction::parse("z3", 2).is_err());
        assert!(PolyFunction::parse("1+", 2).is_err());
        assert!(PolyFunction::parse("(1+2i", 2).is_err());
        assert!(PolyFunction::parse("z1^x", 2).is_err());
        assert!(PolyFunction::parse("", 2).is_err());
    }

    #[test]
    fn points() {
        assert_eq!(parse_point("0.3,-0.4").unwrap(), vec![c(0.3, 0.0), c(-0.4, 0.0)]);
        assert_eq!(parse_point("0.1+0.2i,0").unwrap(), vec![c(0.1, 0.2), c(0.0, 0.0)]);
    }
}
