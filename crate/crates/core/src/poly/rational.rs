//! Rational numbers and p-adic valuations.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational with reduced numerator and positive denominator.
pub type Rational = BigRational;

/// Builds `n/d` in lowest terms with positive denominator.
pub fn rat_reduce(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Rational> {
    let d = d.into();
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(n.into(), d))
}

pub fn rat_int(n: impl Into<BigInt>) -> Rational {
    BigRational::from_integer(n.into())
}

/// Parses `a` or `a/b`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidArgument(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            rat_reduce(n, d)
        }
        None => Ok(rat_int(s.parse::<BigInt>().map_err(|_| bad())?)),
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p % 2 == 0 {
        return false;
    }
    let mut i = 3u64;
    while i.saturating_mul(i) <= p {
        if p % i == 0 {
            return false;
        }
        i += 2;
    }
    true
}

/// Iterator over all primes in increasing order.
pub fn primes() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&n| is_prime(n))
}

/// `v_p(x)`, with `None` standing for `+∞` at zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PadicValuation {
    pub prime: u64,
    pub valuation: Option<i64>,
}

impl PadicValuation {
    pub fn is_infinite(&self) -> bool {
        self.valuation.is_none()
    }

    /// `|x|_p = p^(-v)` as a float; zero for `x = 0`.
    pub fn abs(&self) -> f64 {
        match self.valuation {
            None => 0.0,
            Some(v) => (self.prime as f64).powi(-(v as i32)),
        }
    }
}

impl fmt::Display for PadicValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.valuation {
            None => write!(f, "v_{}=inf", self.prime),
            Some(v) => write!(f, "v_{}={}", self.prime, v),
        }
    }
}

/// Valuation of a nonzero integer; panics on zero.
pub fn int_valuation(n: &BigInt, p: u64) -> i64 {
    debug_assert!(!n.is_zero());
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

pub fn padic_valuation(x: &Rational, p: u64) -> Result<PadicValuation> {
    if !is_prime(p) {
        return Err(Error::InvalidPrime(p.to_string()));
    }
    if x.is_zero() {
        return Ok(PadicValuation {
            prime: p,
            valuation: None,
        });
    }
    let v = int_valuation(x.numer(), p) - int_valuation(x.denom(), p);
    Ok(PadicValuation {
        prime: p,
        valuation: Some(v),
    })
}

/// Operands above this many bits go through a Lehmer-style gcd.
const FAST_GCD_BITS: u64 = 2048;

/// Nonnegative gcd. Large operands are handed to `dashu-int`, whose gcd is
/// much faster than the binary algorithm for numbers of many limbs.
pub fn big_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    if a.bits().min(b.bits()) < FAST_GCD_BITS {
        return a.gcd(b);
    }
    use dashu_int::ops::Gcd;
    let to = |x: &BigInt| dashu_int::UBig::from_le_bytes(&x.magnitude().to_bytes_le());
    let g = (&to(a)).gcd(&to(b));
    BigInt::from_bytes_le(num_bigint::Sign::Plus, &g.to_le_bytes())
}

/// Natural log of a positive big integer, accurate to f64 precision.
pub fn ln_bigint(n: &BigInt) -> f64 {
    let n = n.abs();
    debug_assert!(n.is_positive());
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top = (&n >> shift).to_f64().unwrap();
    top.ln() + (shift as f64) * std::f64::consts::LN_2
}

/// Bit size of a rational (numerator plus denominator).
pub fn rational_bits(x: &Rational) -> u64 {
    x.numer().bits() + if x.denom().is_one() { 0 } else { x.denom().bits() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        rat_reduce(n, d).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let r = q(4, 6);
        assert_eq!((r.numer().clone(), r.denom().clone()), (2.into(), 3.into()));
        let z = q(0, 5);
        assert_eq!((z.numer().clone(), z.denom().clone()), (0.into(), 1.into()));
        let s = q(3, -9);
        assert_eq!((s.numer().clone(), s.denom().clone()), ((-1).into(), 3.into()));
        assert_eq!(rat_reduce(1, 0), Err(Error::DivisionByZero));
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(padic_valuation(&q(8, 1), 2).unwrap().valuation, Some(3));
        assert_eq!(padic_valuation(&q(2, 9), 3).unwrap().valuation, Some(-2));
        assert!(padic_valuation(&q(0, 1), 5).unwrap().is_infinite());
        assert!(matches!(
            padic_valuation(&q(3, 1), 4),
            Err(Error::InvalidPrime(_))
        ));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("1/2").unwrap(), q(1, 2));
        assert_eq!(parse_rational(" -3 ").unwrap(), q(-3, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn big_log() {
        let n = BigInt::from(3u8).pow(2000);
        let expected = 2000.0 * 3f64.ln();
        assert!((ln_bigint(&n) - expected).abs() < 1e-9 * expected);
    }
}
