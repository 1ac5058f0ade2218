//! Text format for polynomials: `Y^2 + 3*Y*Z + 2*Z^2`.
//!
//! Terms are joined by `+`/`-`, products use `*`, powers `^` with a
//! nonnegative integer exponent. Rational constants may be written `3/4`, and
//! parentheses may be used freely; products are expanded on parsing.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::rational::{rat_int, Rational};
use crate::error::{Error, Result};

/// Sparse polynomial with rational coefficients, not necessarily homogeneous.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePoly {
    pub nvars: usize,
    pub terms: BTreeMap<Monomial, Rational>,
}

impl SparsePoly {
    pub fn zero(nvars: usize) -> Self {
        SparsePoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.terms.insert(Monomial::var(nvars, i), Rational::one());
        p
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn add(&self, other: &SparsePoly) -> SparsePoly {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let e = terms.entry(m.clone()).or_insert_with(Rational::zero);
            *e += c;
            if e.is_zero() {
                terms.remove(m);
            }
        }
        SparsePoly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn neg(&self) -> SparsePoly {
        SparsePoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &SparsePoly) -> SparsePoly {
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let e = terms.entry(m.clone()).or_insert_with(Rational::zero);
                *e += ca * cb;
                if e.is_zero() {
                    terms.remove(&m);
                }
            }
        }
        SparsePoly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn scale(&self, k: &Rational) -> SparsePoly {
        if k.is_zero() {
            return SparsePoly::zero(self.nvars);
        }
        SparsePoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> SparsePoly {
        let mut r = SparsePoly::constant(self.nvars, Rational::one());
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }
}

/// Variable naming scheme for one polynomial ring.
#[derive(Debug, Clone)]
pub struct VarNames {
    aliases: Vec<String>,
    prefix: char,
    nvars: usize,
}

impl VarNames {
    /// `X, Y, Z, W` (up to four variables) or `X0..Xn`.
    pub fn projective(nvars: usize) -> Self {
        Self::with_prefix('X', nvars)
    }

    /// `x, y, z, w` or `x0..xn`.
    pub fn affine(nvars: usize) -> Self {
        Self::with_prefix('x', nvars)
    }

    fn with_prefix(prefix: char, nvars: usize) -> Self {
        let base = ["X", "Y", "Z", "W"];
        let aliases = if nvars <= 4 {
            base[..nvars]
                .iter()
                .map(|s| {
                    if prefix.is_lowercase() {
                        s.to_lowercase()
                    } else {
                        s.to_string()
                    }
                })
                .collect()
        } else {
            Vec::new()
        };
        VarNames {
            aliases,
            prefix,
            nvars,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn name(&self, i: usize) -> String {
        match self.aliases.get(i) {
            Some(a) => a.clone(),
            None => format!("{}{}", self.prefix, i),
        }
    }

    pub fn lookup(&self, ident: &str) -> Option<usize> {
        if let Some(i) = self.aliases.iter().position(|a| a == ident) {
            return Some(i);
        }
        let rest = ident.strip_prefix(self.prefix)?;
        let i: usize = rest.parse().ok()?;
        (i < self.nvars && !rest.starts_with('+')).then_some(i)
    }
}

fn parse_error(src: &str, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        column,
        message: message.into(),
        caret: format!("{}\n{}^", src, " ".repeat(column)),
    }
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
    names: &'a VarNames,
    /// column offset of `src` within the caller's full input, for error carets
    offset: usize,
    full: &'a str,
}

impl<'a> Parser<'a> {
    fn col(&self) -> usize {
        self.offset
            + self
                .chars
                .get(self.pos)
                .map(|(i, _)| *i)
                .unwrap_or(self.src.len())
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        parse_error(self.full, self.col(), msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn expr(&mut self) -> Result<SparsePoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some('-') => {
                    self.bump();
                    acc = acc.add(&self.term()?.neg());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<SparsePoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.bump();
                    acc = acc.mul(&self.unary()?);
                }
                Some('/') => {
                    self.bump();
                    let at = self.col();
                    let d = self.unary()?;
                    if !d.is_constant() || d.terms.is_empty() {
                        return Err(parse_error(
                            self.full,
                            at,
                            "division only by a nonzero constant",
                        ));
                    }
                    let c = d.terms.values().next().unwrap().clone();
                    acc = acc.scale(&(Rational::one() / c));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<SparsePoly> {
        match self.peek() {
            Some('-') => {
                self.bump();
                Ok(self.unary()?.neg())
            }
            Some('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<SparsePoly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.bump();
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.chars.len() && self.chars[self.pos].1.is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.err("expected a nonnegative integer exponent"));
            }
            let digits: String = self.chars[start..self.pos].iter().map(|(_, c)| c).collect();
            let e: u32 = digits
                .parse()
                .map_err(|_| parse_error(self.full, self.offset + self.chars[start].0, "exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<SparsePoly> {
        let n = self.names.nvars();
        match self.peek() {
            Some('(') => {
                self.bump();
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.bump();
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].1.is_ascii_digit() {
                    self.pos += 1;
                }
                let digits: String = self.chars[start..self.pos].iter().map(|(_, c)| c).collect();
                let v: BigInt = digits.parse().unwrap();
                Ok(SparsePoly::constant(n, rat_int(v)))
            }
            Some(c) if c.is_alphabetic() => {
                let start = self.pos;
                let col = self.col();
                while self.pos < self.chars.len() && self.chars[self.pos].1.is_alphanumeric() {
                    self.pos += 1;
                }
                let ident: String = self.chars[start..self.pos].iter().map(|(_, c)| c).collect();
                match self.names.lookup(&ident) {
                    Some(i) => Ok(SparsePoly::var(n, i)),
                    None => Err(parse_error(self.full, col, format!("unknown variable {ident:?}"))),
                }
            }
            Some(c) => Err(self.err(format!("unexpected {c:?}"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses `src` (a slice of `full` starting at column `offset`) as one polynomial.
pub(crate) fn parse_in(full: &str, offset: usize, src: &str, names: &VarNames) -> Result<SparsePoly> {
    let mut p = Parser {
        src,
        chars: src.char_indices().collect(),
        pos: 0,
        names,
        offset,
        full,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

pub fn parse_poly(src: &str, names: &VarNames) -> Result<SparsePoly> {
    parse_in(src, 0, src, names)
}

/// Renders terms in descending graded-lex order.
pub fn format_terms<'a>(
    terms: impl DoubleEndedIterator<Item = (&'a Monomial, &'a Rational)>,
    names: &VarNames,
) -> String {
    let mut out = String::new();
    for (m, c) in terms.rev() {
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        if !a.is_one() || m.is_one() {
            factors.push(if a.is_integer() {
                a.numer().to_string()
            } else {
                format!("{}/{}", a.numer(), a.denom())
            });
        }
        for (i, &e) in m.0.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(names.name(i)),
                _ => factors.push(format!("{}^{}", names.name(i), e)),
            }
        }
        out.push_str(&factors.join("*"));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let names = VarNames::projective(3);
        let p = parse_poly("(Y+Z)*(Y+2*Z)", &names).unwrap();
        assert_eq!(format_terms(p.terms.iter(), &names), "Y^2 + 3*Y*Z + 2*Z^2");
        let q = parse_poly("-3/4*X0^2 + X2", &names).unwrap();
        assert_eq!(format_terms(q.terms.iter(), &names), "-3/4*X^2 + Z");
    }

    #[test]
    fn caret_points_at_problem() {
        let names = VarNames::projective(3);
        match parse_poly("X + Q^2", &names) {
            Err(Error::Parse { column, caret, .. }) => {
                assert_eq!(column, 4);
                assert!(caret.ends_with("    ^"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_poly("X^", &names).is_err());
        assert!(parse_poly("X/Y", &names).is_err());
        assert!(parse_poly("X3", &names).is_err());
    }

    #[test]
    fn affine_names() {
        let names = VarNames::affine(2);
        let p = parse_poly("x*(x - y) + 1", &names).unwrap();
        assert_eq!(format_terms(p.terms.iter(), &names), "x^2 - x*y + 1");
    }
}
