//! Exact arithmetic foundation: rationals, p-adic valuations and homogeneous
//! polynomials over the rationals.

pub mod gcd;
pub mod hompoly;
pub mod monomial;
pub mod rational;
pub mod text;
pub mod zpoly;

pub use hompoly::{poly_compose, poly_eval, poly_gcd, poly_mul, HomPoly};
pub use monomial::Monomial;
pub use rational::{padic_valuation, parse_rational, rat_reduce, PadicValuation, Rational};
pub use text::{parse_poly, SparsePoly, VarNames};
pub use zpoly::ZPoly;

use crate::error::{Error, Result};

/// Default limit on the total coefficient size of one polynomial, in bits.
pub const DEFAULT_BUDGET_BITS: u64 = 1 << 20;

/// Coefficient-size budget shared by iteration routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub bits: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            bits: DEFAULT_BUDGET_BITS,
        }
    }
}

impl Budget {
    pub fn new(bits: u64) -> Self {
        Budget { bits }
    }

    pub fn unlimited() -> Self {
        Budget { bits: u64::MAX }
    }

    /// Errors when `poly` is larger than the budget; `step` names the
    /// iteration being computed.
    pub fn check(&self, poly: &HomPoly, step: usize) -> Result<()> {
        let bits = poly.coefficient_bits();
        if bits > self.bits {
            return Err(Error::Budget {
                step,
                bits,
                limit: self.bits,
            });
        }
        Ok(())
    }
}
