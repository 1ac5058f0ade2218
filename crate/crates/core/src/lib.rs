//! Exact computation of dynamical degrees, arithmetic degrees and canonical
//! heights for rational self-maps of projective space over the rationals.

pub mod catalog;
pub mod error;
pub mod heights;
pub mod monomial;
pub mod padiccert;
pub mod poly;
pub mod projmap;

pub use error::{Error, Result};
pub use poly::{Budget, HomPoly, PadicValuation, Rational};
pub use projmap::{ProjPoint, RationalMap};
