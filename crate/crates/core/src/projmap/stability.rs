//! Algebraic stability of planar maps through the orbit of the line at
//! infinity.

use num_traits::Zero;
use serde::Serialize;

use super::map::RationalMap;
use super::point::ProjPoint;
use crate::error::{Error, Result};
use crate::poly::HomPoly;

/// Default number of non-empty boundary steps before stability is declared
/// heuristically.
pub const DEFAULT_MAX_STEPS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BoundaryVariety {
    /// The whole line `{Z = 0}`.
    Line,
    /// The line again, reached through the induced map `[F0 : G0]` of degree
    /// at least one.
    Curve { phi: [String; 2] },
    Point { point: ProjPoint },
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum StabilityVerdict {
    Stable,
    /// The boundary orbit lands in the indeterminacy locus; `step` is the
    /// index of the first empty variety.
    Unstable { step: usize },
    /// The boundary orbit is a periodic point cycle of this period.
    Cycle { period: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryOrbit {
    pub varieties: Vec<BoundaryVariety>,
    pub verdict: StabilityVerdict,
    /// Set when stability was declared only because `max_steps` non-empty
    /// varieties were seen.
    pub heuristic: bool,
}

impl BoundaryOrbit {
    pub fn is_stable(&self) -> bool {
        !matches!(self.verdict, StabilityVerdict::Unstable { .. })
    }

    /// Stable with a proof (revisited state) rather than a deep prefix.
    pub fn is_certified_stable(&self) -> bool {
        self.is_stable() && !self.heuristic
    }
}

/// Drops every term containing the last variable.
fn restrict_to_boundary(p: &HomPoly) -> Result<HomPoly> {
    let n = p.nvars();
    HomPoly::from_terms(
        n,
        p.degree(),
        p.terms()
            .iter()
            .filter(|(m, _)| m.0[n - 1] == 0)
            .map(|(m, c)| (m.clone(), c.clone())),
    )
}

pub fn stability_analysis(f: &RationalMap) -> Result<BoundaryOrbit> {
    stability_analysis_with(f, DEFAULT_MAX_STEPS)
}

pub fn stability_analysis_with(f: &RationalMap, max_steps: usize) -> Result<BoundaryOrbit> {
    if f.nvars() != 3 {
        return Err(Error::InvalidArgument(
            "boundary analysis is implemented for maps of the plane".into(),
        ));
    }
    if !f.is_affine_extension() {
        return Err(Error::NotAffineExtension);
    }
    let fb = restrict_to_boundary(&f.coords()[0])?;
    let gb = restrict_to_boundary(&f.coords()[1])?;
    let mut varieties = vec![BoundaryVariety::Line];
    if fb.is_zero() && gb.is_zero() {
        varieties.push(BoundaryVariety::Empty);
        return Ok(BoundaryOrbit {
            varieties,
            verdict: StabilityVerdict::Unstable { step: 1 },
            heuristic: false,
        });
    }
    let h = fb.gcd(&gb)?;
    let f0 = fb.div_exact(&h)?;
    let g0 = gb.div_exact(&h)?;
    if f.degree() > h.degree() {
        varieties.push(BoundaryVariety::Curve {
            phi: [f0.to_text(), g0.to_text()],
        });
        return Ok(BoundaryOrbit {
            varieties,
            verdict: StabilityVerdict::Stable,
            heuristic: false,
        });
    }
    let constant = |p: &HomPoly| p.terms().values().next().cloned().unwrap_or_else(Zero::zero);
    let mut points = vec![ProjPoint::from_rationals(&[
        constant(&f0),
        constant(&g0),
        Zero::zero(),
    ])?];
    varieties.push(BoundaryVariety::Point {
        point: points[0].clone(),
    });
    for step in 1..=max_steps {
        let cur = points.last().unwrap();
        if f.is_indeterminate(cur)? {
            varieties.push(BoundaryVariety::Empty);
            return Ok(BoundaryOrbit {
                varieties,
                verdict: StabilityVerdict::Unstable { step: step + 1 },
                heuristic: false,
            });
        }
        let next = f.apply(cur)?;
        let seen = points.iter().position(|p| *p == next);
        varieties.push(BoundaryVariety::Point {
            point: next.clone(),
        });
        if let Some(j) = seen {
            return Ok(BoundaryOrbit {
                varieties,
                verdict: StabilityVerdict::Cycle {
                    period: points.len() - j,
                },
                heuristic: false,
            });
        }
        points.push(next);
    }
    Ok(BoundaryOrbit {
        varieties,
        verdict: StabilityVerdict::Stable,
        heuristic: true,
    })
}
