use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::gcd::gcd_homogeneous;
use super::monomial::Monomial;
use super::rational::{rat_int, Rational};
use super::text::{format_terms, parse_poly, SparsePoly, VarNames};
use super::zpoly::ZPoly;
use crate::error::{Error, Result};

/// Homogeneous polynomial in `X0..X{n-1}` with rational coefficients.
///
/// Every stored monomial has total degree `degree`. The zero polynomial keeps
/// whatever degree tag it was created with.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomPoly {
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Monomial, Rational>,
}

impl HomPoly {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        HomPoly {
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(nvars, i), Rational::one());
        HomPoly {
            nvars,
            degree: 1,
            terms,
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars, 0);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    /// Builds from explicit terms; all monomials must share one total degree.
    pub fn from_terms(
        nvars: usize,
        degree: u32,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Result<Self> {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(Error::ArityMismatch(nvars, m.nvars()));
            }
            if m.degree() != degree {
                return Err(Error::NotHomogeneous(format!(
                    "monomial of degree {} in a degree-{} polynomial",
                    m.degree(),
                    degree
                )));
            }
            *map.entry(m).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(HomPoly {
            nvars,
            degree,
            terms: map,
        })
    }

    pub fn from_sparse(p: &SparsePoly) -> Result<Self> {
        let degree = p.total_degree().unwrap_or(0);
        Self::from_terms(p.nvars, degree, p.terms.clone())
    }

    pub fn from_zpoly(p: &ZPoly, degree: u32) -> Self {
        debug_assert!(p.terms().keys().all(|m| m.degree() == degree));
        HomPoly {
            nvars: p.nvars(),
            degree,
            terms: p
                .terms()
                .iter()
                .map(|(m, c)| (m.clone(), rat_int(c.clone())))
                .collect(),
        }
    }

    /// Clears denominators: returns `(z, den)` with `self = z / den`.
    pub fn to_zpoly(&self) -> (ZPoly, BigInt) {
        let den = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let z = ZPoly::from_terms(
            self.nvars,
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), c.numer() * (&den / c.denom()))),
        );
        (z, den)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms
            .get(&Monomial::from_slice(exps))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    fn check_arity(&self, other: &HomPoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn add(&self, other: &HomPoly) -> Result<HomPoly> {
        self.check_arity(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(format!(
                "cannot add degrees {} and {}",
                self.degree, other.degree
            )));
        }
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let e = terms.entry(m.clone()).or_insert_with(Rational::zero);
            *e += c;
            if e.is_zero() {
                terms.remove(m);
            }
        }
        Ok(HomPoly {
            nvars: self.nvars,
            degree: self.degree,
            terms,
        })
    }

    pub fn neg(&self) -> HomPoly {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &HomPoly) -> Result<HomPoly> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Rational) -> HomPoly {
        if k.is_zero() {
            return HomPoly::zero(self.nvars, self.degree);
        }
        HomPoly {
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &HomPoly) -> Result<HomPoly> {
        self.check_arity(other)?;
        let degree = self.degree + other.degree;
        if self.is_zero() || other.is_zero() {
            return Ok(HomPoly::zero(self.nvars, degree));
        }
        let (za, da) = self.to_zpoly();
        let (zb, db) = other.to_zpoly();
        Ok(Self::from_zpoly(&za.mul(&zb), degree).scale(&Rational::new(BigInt::one(), da * db)))
    }

    pub fn pow(&self, k: u32) -> HomPoly {
        let (z, d) = self.to_zpoly();
        Self::from_zpoly(&z.pow(k), self.degree * k).scale(&Rational::new(BigInt::one(), d.pow(k)))
    }

    /// `self(g_0, ..., g_n)`; the `g_i` must share arity and degree.
    pub fn compose(&self, subs: &[HomPoly]) -> Result<HomPoly> {
        if subs.len() != self.nvars {
            return Err(Error::ArityMismatch(self.nvars, subs.len()));
        }
        let target = subs[0].nvars;
        let e = subs[0].degree;
        for g in subs {
            if g.nvars != target {
                return Err(Error::ArityMismatch(target, g.nvars));
            }
            if g.degree != e {
                return Err(Error::DegreeMismatch(format!(
                    "substituted polynomials have degrees {} and {}",
                    e, g.degree
                )));
            }
        }
        let degree = self.degree * e;
        let (zf, df) = self.to_zpoly();
        let parts: Vec<(ZPoly, BigInt)> = subs.iter().map(|g| g.to_zpoly()).collect();
        // f(g/den) = f(g * L/den) / L^deg f with a common L
        let l = parts.iter().fold(BigInt::one(), |acc, (_, d)| acc.lcm(d));
        let zsubs: Vec<ZPoly> = parts.iter().map(|(z, d)| z.scale(&(&l / d))).collect();
        let raw = zf.compose(&zsubs);
        let out = Self::from_zpoly(&raw, degree)
            .scale(&Rational::new(BigInt::one(), df * l.pow(self.degree)));
        debug_assert!(out.is_zero() || out.terms.keys().all(|m| m.degree() == degree));
        Ok(HomPoly { degree, ..out })
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch(self.nvars, point.len()));
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.0.iter()) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Exact quotient; errors when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &HomPoly) -> Result<HomPoly> {
        self.check_arity(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if divisor.degree > self.degree && !self.is_zero() {
            return Err(Error::InexactDivision);
        }
        let degree = self.degree.saturating_sub(divisor.degree);
        if self.is_zero() {
            return Ok(HomPoly::zero(self.nvars, degree));
        }
        let (za, da) = self.to_zpoly();
        let (zb, db) = divisor.to_zpoly();
        let zb_prim = zb.primitive();
        let cb = Rational::new(zb.leading_coeff().unwrap().clone(), zb_prim.leading_coeff().unwrap().clone());
        let q = za.div_exact(&zb_prim)?;
        // self = za/da, divisor = cb * zb_prim / db
        Ok(Self::from_zpoly(&q, degree).scale(&(rat_int(db) / (rat_int(da) * cb))))
    }

    /// Primitive integer representative with positive leading coefficient.
    pub fn normalized(&self) -> HomPoly {
        if self.is_zero() {
            return self.clone();
        }
        let (z, _) = self.to_zpoly();
        Self::from_zpoly(&z.primitive(), self.degree)
    }

    /// Primitive gcd, positive leading coefficient under graded-lex.
    pub fn gcd(&self, other: &HomPoly) -> Result<HomPoly> {
        self.check_arity(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroGcd);
        }
        let (za, _) = self.to_zpoly();
        let (zb, _) = other.to_zpoly();
        let g = gcd_homogeneous(&[&za, &zb]);
        let d = g.total_degree().unwrap_or(0);
        Ok(Self::from_zpoly(&g, d))
    }

    pub fn is_integral_primitive(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
            && self
                .terms
                .values()
                .fold(BigInt::zero(), |g, c| g.gcd(c.numer()))
                .is_one()
    }

    pub fn coefficient_bits(&self) -> u64 {
        self.terms.values().map(super::rational::rational_bits).sum()
    }

    pub fn max_abs_coeff(&self) -> Rational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    pub fn parse(src: &str, nvars: usize) -> Result<HomPoly> {
        let sp = parse_poly(src, &VarNames::projective(nvars))?;
        Self::from_sparse(&sp)
    }

    pub fn to_text(&self) -> String {
        format_terms(self.terms.iter(), &VarNames::projective(self.nvars))
    }
}

impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

pub fn poly_mul(a: &HomPoly, b: &HomPoly) -> Result<HomPoly> {
    a.mul(b)
}

pub fn poly_compose(f: &HomPoly, g: &[HomPoly]) -> Result<HomPoly> {
    f.compose(g)
}

pub fn poly_gcd(a: &HomPoly, b: &HomPoly) -> Result<HomPoly> {
    a.gcd(b)
}

pub fn poly_eval(f: &HomPoly, point: &[Rational]) -> Result<Rational> {
    f.eval(point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational::rat_reduce;

    fn p(s: &str) -> HomPoly {
        HomPoly::parse(s, 3).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        rat_reduce(n, d).unwrap()
    }

    #[test]
    fn mul_examples() {
        assert_eq!(poly_mul(&p("X*Z"), &p("Z^2")).unwrap(), p("X*Z^3"));
        assert_eq!(poly_mul(&p("Y+Z"), &p("Y+2*Z")).unwrap(), p("Y^2 + 3*Y*Z + 2*Z^2"));
        let zero = HomPoly::zero(3, 0);
        let prod = poly_mul(&zero, &p("X^2")).unwrap();
        assert!(prod.is_zero());
        assert_eq!(prod.degree(), 2);
        assert!(poly_mul(&p("X"), &HomPoly::var(2, 0)).is_err());
    }

    #[test]
    fn compose_examples() {
        let g = vec![p("Y^2"), p("X*Z"), p("Z^2")];
        assert_eq!(poly_compose(&p("Y^2"), &g).unwrap(), p("X^2*Z^2"));
        assert_eq!(poly_compose(&p("X*Z"), &g).unwrap(), p("Y^2*Z^2"));
        let id = vec![p("X"), p("Y"), p("Z")];
        assert_eq!(poly_compose(&p("X^2"), &id).unwrap(), p("X^2"));
        let bad = vec![p("X"), p("Y^2"), p("Z")];
        assert!(matches!(poly_compose(&p("X"), &bad), Err(Error::DegreeMismatch(_))));
    }

    #[test]
    fn compose_rational_coefficients() {
        let f = p("1/2*X^2 + Y*Z");
        let g = vec![p("1/3*X"), p("Y"), p("2*Z")];
        assert_eq!(f.compose(&g).unwrap(), p("1/18*X^2 + 2*Y*Z"));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(poly_gcd(&p("X^2*Z^2"), &p("Z^4")).unwrap(), p("Z^2"));
        assert_eq!(poly_gcd(&p("X^2"), &p("Y^2")).unwrap(), p("1"));
        assert_eq!(poly_gcd(&p("X*Y"), &p("X^2")).unwrap(), p("X"));
        assert_eq!(
            poly_gcd(&HomPoly::zero(3, 2), &HomPoly::zero(3, 2)),
            Err(Error::ZeroGcd)
        );
        assert_eq!(poly_gcd(&HomPoly::zero(3, 2), &p("-2*X*Y")).unwrap(), p("X*Y"));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(poly_eval(&p("X*Z"), &[q(1, 1), q(0, 1), q(0, 1)]).unwrap(), q(0, 1));
        assert_eq!(
            poly_eval(&p("Y^2 + 3*Y*Z + 2*Z^2"), &[q(0, 1), q(1, 1), q(1, 1)]).unwrap(),
            q(6, 1)
        );
        assert_eq!(poly_eval(&p("X^2"), &[q(1, 2), q(0, 1), q(0, 1)]).unwrap(), q(1, 4));
        assert!(poly_eval(&p("X"), &[q(1, 1)]).is_err());
    }

    #[test]
    fn exact_division_with_rationals() {
        let a = p("1/2*X^2 - 1/2*Y^2");
        let b = p("3*X + 3*Y");
        assert_eq!(a.div_exact(&b).unwrap(), p("1/6*X - 1/6*Y"));
        assert_eq!(a.div_exact(&p("X + Z")), Err(Error::InexactDivision));
    }

    #[test]
    fn not_homogeneous_rejected() {
        assert!(matches!(HomPoly::parse("X^2 + Y", 3), Err(Error::NotHomogeneous(_))));
    }
}
