use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::rational::{big_gcd, parse_rational};
use crate::poly::Rational;

/// A point of projective space over the rationals, stored as its unique
/// coprime integer representative with positive first nonzero coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    coords: Vec<BigInt>,
}

impl ProjPoint {
    pub fn new(coords: Vec<BigInt>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidPoint("no coordinates".into()));
        }
        let mut g = BigInt::zero();
        for c in &coords {
            g = big_gcd(&g, c);
            if g.is_one() {
                break;
            }
        }
        if g.is_zero() {
            return Err(Error::InvalidPoint("all coordinates are zero".into()));
        }
        let mut coords: Vec<BigInt> = if g.is_one() {
            coords
        } else {
            coords.into_iter().map(|c| c / &g).collect()
        };
        if coords.iter().find(|c| !c.is_zero()).unwrap().is_negative() {
            for c in coords.iter_mut() {
                *c = -&*c;
            }
        }
        Ok(ProjPoint { coords })
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Clears denominators of a rational representative.
    pub fn from_rationals(coords: &[Rational]) -> Result<Self> {
        let den = coords.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        Self::new(
            coords
                .iter()
                .map(|c| c.numer() * (&den / c.denom()))
                .collect(),
        )
    }

    /// The affine point `(x_1, ..., x_N)` as `[x_1, ..., x_N, 1]`.
    pub fn affine(coords: &[Rational]) -> Result<Self> {
        let mut v = coords.to_vec();
        v.push(Rational::one());
        Self::from_rationals(&v)
    }

    /// Parses `"2,3"` (affine, `nvars - 1` entries) or `"2,3,1"` (projective);
    /// entries may be rationals such as `1/2`.
    pub fn parse(src: &str, nvars: usize) -> Result<Self> {
        let vals: Vec<Rational> = src
            .split(',')
            .map(|s| parse_rational(s.trim()))
            .collect::<Result<_>>()?;
        if vals.len() + 1 == nvars {
            Self::affine(&vals)
        } else if vals.len() == nvars {
            Self::from_rationals(&vals)
        } else {
            Err(Error::InvalidPoint(format!(
                "expected {} or {} coordinates, got {}",
                nvars - 1,
                nvars,
                vals.len()
            )))
        }
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Affine coordinates `x_i / x_N`, if the last coordinate is nonzero.
    pub fn affine_coords(&self) -> Option<Vec<Rational>> {
        let w = self.coords.last()?;
        if w.is_zero() {
            return None;
        }
        Some(
            self.coords[..self.coords.len() - 1]
                .iter()
                .map(|c| Rational::new(c.clone(), w.clone()))
                .collect(),
        )
    }

    pub fn max_abs(&self) -> BigInt {
        self.coords.iter().map(|c| c.abs()).max().unwrap()
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        v.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        let p = ProjPoint::from_ints(&[-4, 6, 0]).unwrap();
        assert_eq!(p, ProjPoint::from_ints(&[2, -3, 0]).unwrap());
        assert_eq!(p.to_string(), "[2, -3, 0]");
        assert!(ProjPoint::from_ints(&[0, 0, 0]).is_err());
    }

    #[test]
    fn parse_affine_and_projective() {
        assert_eq!(
            ProjPoint::parse("1/2, 1", 3).unwrap(),
            ProjPoint::from_ints(&[1, 2, 2]).unwrap()
        );
        assert_eq!(
            ProjPoint::parse("2,3,1", 3).unwrap(),
            ProjPoint::from_ints(&[2, 3, 1]).unwrap()
        );
        assert!(ProjPoint::parse("1", 3).is_err());
    }
}
