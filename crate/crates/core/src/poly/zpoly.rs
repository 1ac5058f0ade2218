//! Sparse multivariate polynomials over the integers.
//!
//! This is the arithmetic kernel behind [`HomPoly`](super::HomPoly): maps are
//! stored with primitive integer coefficients, so composition, gcd and
//! evaluation all run here without rational reductions.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::rational::big_gcd;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl ZPoly {
    pub fn zero(nvars: usize) -> Self {
        ZPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(nvars, Monomial::var(nvars, i), BigInt::one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            *acc.entry(m).or_insert_with(BigInt::zero) += c;
        }
        ZPoly {
            nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.is_constant() && self.terms.values().all(|c| c.is_one())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.leading().map(|(_, c)| c)
    }

    /// Integer content (nonnegative gcd of coefficients).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = big_gcd(&g, c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(self.nvars),
            Some(first) => it.fold(first.clone(), |acc, m| acc.gcd(m)),
        }
    }

    pub fn neg(&self) -> ZPoly {
        ZPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, other: &ZPoly) -> ZPoly {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let e = terms.entry(m.clone()).or_insert_with(BigInt::zero);
            *e += c;
            if e.is_zero() {
                terms.remove(m);
            }
        }
        ZPoly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn sub(&self, other: &ZPoly) -> ZPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> ZPoly {
        if k.is_zero() {
            return ZPoly::zero(self.nvars);
        }
        ZPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> ZPoly {
        ZPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() || other.is_zero() {
            return ZPoly::zero(self.nvars);
        }
        if self.len() == 1 {
            let (m, c) = self.leading().unwrap();
            return other.mul_monomial(m).scale(c);
        }
        if other.len() == 1 {
            let (m, c) = other.leading().unwrap();
            return self.mul_monomial(m).scale(c);
        }
        let mut acc: HashMap<Monomial, BigInt> =
            HashMap::with_capacity(self.len().saturating_mul(other.len()).min(1 << 20));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                match acc.get_mut(&m) {
                    Some(e) => *e += ca * cb,
                    None => {
                        acc.insert(m, ca * cb);
                    }
                }
            }
        }
        ZPoly {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> ZPoly {
        let mut result = ZPoly::one(self.nvars);
        for _ in 0..k {
            result = result.mul(self);
        }
        result
    }

    /// Divides every coefficient by `k`, which must divide them exactly.
    pub fn div_scalar(&self, k: &BigInt) -> Result<ZPoly> {
        if k.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            terms.insert(m.clone(), q);
        }
        Ok(ZPoly {
            nvars: self.nvars,
            terms,
        })
    }

    /// Exact quotient `self / divisor`; errors if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &ZPoly) -> Result<ZPoly> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if divisor.len() == 1 {
            let (dm, dc) = divisor.leading().unwrap();
            let mut terms = BTreeMap::new();
            for (m, c) in &self.terms {
                if !dm.divides(m) {
                    return Err(Error::InexactDivision);
                }
                let (q, r) = c.div_rem(dc);
                if !r.is_zero() {
                    return Err(Error::InexactDivision);
                }
                terms.insert(dm.quotient_of(m), q);
            }
            return Ok(ZPoly {
                nvars: self.nvars,
                terms,
            });
        }
        let (dm, dc) = divisor.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut rem = self.terms.clone();
        let mut quot: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        while let Some((rm, rc)) = rem.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if !dm.divides(&rm) {
                return Err(Error::InexactDivision);
            }
            let (qc, r) = rc.div_rem(&dc);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            let qm = dm.quotient_of(&rm);
            for (m, c) in &divisor.terms {
                let t = m.mul(&qm);
                let e = rem.entry(t.clone()).or_insert_with(BigInt::zero);
                *e -= c * &qc;
                if e.is_zero() {
                    rem.remove(&t);
                }
            }
            quot.insert(qm, qc);
        }
        Ok(ZPoly {
            nvars: self.nvars,
            terms: quot,
        })
    }

    /// Sign-normalized primitive part (positive leading coefficient).
    pub fn primitive(&self) -> ZPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading_coeff().unwrap().is_negative() {
            c = -c;
        }
        self.div_scalar(&c).expect("content divides")
    }

    pub fn eval(&self, point: &[BigInt]) -> BigInt {
        debug_assert_eq!(point.len(), self.nvars);
        let maxdeg: Vec<u32> = (0..self.nvars)
            .map(|i| self.degree_in(i).unwrap_or(0))
            .collect();
        let powers: Vec<Vec<BigInt>> = point
            .iter()
            .zip(&maxdeg)
            .map(|(x, &d)| {
                let mut v = Vec::with_capacity(d as usize + 1);
                v.push(BigInt::one());
                for k in 1..=d as usize {
                    let next = &v[k - 1] * x;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= &powers[i][e as usize];
                }
            }
            acc += t;
        }
        acc
    }

    /// Splits into coefficients of powers of `var`; each coefficient has that exponent zeroed.
    pub fn coeffs_in(&self, var: usize) -> Vec<ZPoly> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![BTreeMap::new(); deg + 1];
        for (m, c) in &self.terms {
            let k = m.0[var] as usize;
            let mut mm = m.clone();
            mm.0[var] = 0;
            out[k].insert(mm, c.clone());
        }
        out.into_iter()
            .map(|terms| ZPoly {
                nvars: self.nvars,
                terms,
            })
            .collect()
    }

    pub fn from_coeffs_in(nvars: usize, var: usize, coeffs: &[ZPoly]) -> ZPoly {
        let mut terms = BTreeMap::new();
        for (k, c) in coeffs.iter().enumerate() {
            for (m, v) in &c.terms {
                let mut mm = m.clone();
                mm.0[var] += k as u32;
                terms.insert(mm, v.clone());
            }
        }
        ZPoly { nvars, terms }
    }

    /// Substitutes `X_var = 1`.
    pub fn dehomogenize(&self, var: usize) -> ZPoly {
        ZPoly::from_terms(
            self.nvars,
            self.terms.iter().map(|(m, c)| {
                let mut mm = m.clone();
                mm.0[var] = 0;
                (mm, c.clone())
            }),
        )
    }

    /// Multiplies each term by the power of `X_var` bringing it to the total degree.
    pub fn homogenize(&self, var: usize) -> ZPoly {
        let d = self.total_degree().unwrap_or(0);
        ZPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut mm = m.clone();
                    mm.0[var] += d - m.degree();
                    (mm, c.clone())
                })
                .collect(),
        }
    }

    /// Substitutes `X_i -> subs[i]` for every variable.
    pub fn compose(&self, subs: &[ZPoly]) -> ZPoly {
        let target_nvars = subs.first().map(|s| s.nvars).unwrap_or(self.nvars);
        let mut cache: Vec<Vec<ZPoly>> = subs.iter().map(|s| vec![ZPoly::one(s.nvars), s.clone()]).collect();
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (m, c) in &self.terms {
            let mut prod = ZPoly::constant(target_nvars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e as usize {
                    let next = cache[i].last().unwrap().mul(&subs[i]);
                    cache[i].push(next);
                }
                prod = prod.mul(&cache[i][e as usize]);
            }
            for (pm, pc) in prod.terms {
                *acc.entry(pm).or_insert_with(BigInt::zero) += pc;
            }
        }
        ZPoly {
            nvars: target_nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Sum of coefficient bit lengths.
    pub fn coefficient_bits(&self) -> u64 {
        self.terms.values().map(|c| c.bits().max(1)).sum()
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Reduction of the coefficients modulo a word-size prime.
    pub fn coeffs_mod(&self, p: u64) -> impl Iterator<Item = (&Monomial, u64)> {
        let pb = BigInt::from(p);
        self.terms.iter().map(move |(m, c)| {
            let r = c.mod_floor(&pb);
            (m, r.try_into().unwrap_or(0u64))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: usize, i: usize) -> ZPoly {
        ZPoly::var(n, i)
    }

    #[test]
    fn exact_division_roundtrip() {
        let x = v(3, 0);
        let y = v(3, 1);
        let z = v(3, 2);
        let a = x.add(&y).mul(&y.sub(&z)).mul(&z.add(&z).add(&x));
        let b = y.sub(&z);
        let q = a.div_exact(&b).unwrap();
        assert_eq!(q.mul(&b), a);
        assert_eq!(a.div_exact(&x.add(&z)), Err(Error::InexactDivision));
    }

    #[test]
    fn compose_identity() {
        let x = v(2, 0);
        let y = v(2, 1);
        let f = x.mul(&x).add(&y.scale(&BigInt::from(3)));
        assert_eq!(f.compose(&[x.clone(), y.clone()]), f);
    }

    #[test]
    fn eval_simple() {
        let x = v(2, 0);
        let y = v(2, 1);
        let f = x.mul(&y).add(&y.pow(3));
        assert_eq!(f.eval(&[BigInt::from(2), BigInt::from(3)]), BigInt::from(33));
    }
}
