//! Rational self-maps of projective space: normalization, composition,
//! iteration, indeterminacy, degree sequences and boundary stability.

pub mod degree;
pub mod dsl;
pub mod map;
pub mod point;
pub mod stability;

pub use degree::{
    degree_sequence, delta_estimate, DegreeSequence, DeltaEstimate, ExactDelta, ExactSource,
};
pub use dsl::{format_affine, format_projective, parse_map};
pub use map::{
    conjugate_linear, height_bound_stats, map_compose, map_from_affine, map_iterate, RationalMap,
};
pub use point::ProjPoint;
pub use stability::{stability_analysis, BoundaryOrbit, BoundaryVariety, StabilityVerdict};
