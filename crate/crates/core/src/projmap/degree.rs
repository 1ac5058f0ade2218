//! Degree sequences of iterates and dynamical-degree estimates.

use serde::Serialize;

use super::map::{for_each_iterate, RationalMap};
use super::stability::BoundaryOrbit;
use crate::error::Error;
use crate::poly::Budget;

/// Default iteration depth by map degree.
pub fn default_max_n(degree: u32) -> usize {
    match degree {
        0..=2 => 12,
        3 => 8,
        _ => 6,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeSequence {
    #[serde(rename = "maxN")]
    pub max_n: usize,
    /// `degs[k]` is the degree of `f^(k+1)`.
    pub degs: Vec<u64>,
    /// Reason the sequence stops before `max_n`, if it does.
    pub truncated: Option<String>,
    /// The sequence stopped because an iterate outgrew the budget.
    #[serde(rename = "budgetExceeded")]
    pub budget_exceeded: bool,
}

impl DegreeSequence {
    pub fn from_degrees(degs: Vec<u64>) -> Self {
        DegreeSequence {
            max_n: degs.len(),
            degs,
            truncated: None,
            budget_exceeded: false,
        }
    }

    /// Whether `deg(f^n) = deg(f)^n` for every computed `n`.
    pub fn is_multiplicative(&self) -> bool {
        let Some(&d) = self.degs.first() else {
            return true;
        };
        let mut p = 1u64;
        self.degs.iter().all(|&e| {
            p = p.saturating_mul(d);
            e == p
        })
    }
}

/// Degrees of `f, f^2, ..., f^max_n`. A budget overrun or a degenerate
/// composition ends the sequence early with a truncation reason.
pub fn degree_sequence(f: &RationalMap, max_n: usize, budget: Budget) -> DegreeSequence {
    let (seq, _) = iterate_with_degrees(f, max_n, budget, false);
    seq
}

/// Like [`degree_sequence`] but also returns the iterates themselves.
pub fn iterate_with_degrees(
    f: &RationalMap,
    max_n: usize,
    budget: Budget,
    keep: bool,
) -> (DegreeSequence, Vec<RationalMap>) {
    let mut degs = Vec::with_capacity(max_n);
    let mut maps = Vec::new();
    let res = for_each_iterate(f, max_n, budget, |_, g| {
        degs.push(g.degree() as u64);
        if keep {
            maps.push(g.clone());
        }
    });
    let seq = DegreeSequence {
        max_n,
        degs,
        budget_exceeded: matches!(res, Err(Error::Budget { .. })),
        truncated: res.err().map(|e| e.to_string()),
    };
    (seq, maps)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ExactSource {
    StableDegree,
    MonomialSpectral,
    Catalog,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExactDelta {
    pub value: f64,
    pub source: ExactSource,
    /// Closed form, e.g. `sqrt(2)`.
    pub description: String,
}

impl ExactDelta {
    /// `delta = d` for a map whose boundary analysis proves stability.
    pub fn from_stability(f: &RationalMap, orbit: &BoundaryOrbit) -> Option<Self> {
        orbit.is_certified_stable().then(|| ExactDelta {
            value: f.degree() as f64,
            source: ExactSource::StableDegree,
            description: f.degree().to_string(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeltaEstimate {
    #[serde(rename = "rootEstimates")]
    pub root_estimates: Vec<f64>,
    #[serde(rename = "ratioEstimates")]
    pub ratio_estimates: Vec<f64>,
    pub best: f64,
    pub exact: Option<ExactDelta>,
}

impl DeltaEstimate {
    /// The exact value when known, otherwise `best`.
    pub fn value(&self) -> f64 {
        self.exact.as_ref().map(|e| e.value).unwrap_or(self.best)
    }
}

/// Relative agreement required between the two most recent ratios before
/// the ratio estimate is preferred over the root estimate.
pub const RATIO_AGREEMENT: f64 = 1e-3;

pub fn delta_estimate(seq: &DegreeSequence, exact: Option<ExactDelta>) -> DeltaEstimate {
    let root_estimates: Vec<f64> = seq
        .degs
        .iter()
        .enumerate()
        .map(|(i, &d)| (d as f64).powf(1.0 / (i + 1) as f64))
        .collect();
    let ratio_estimates: Vec<f64> = seq
        .degs
        .windows(2)
        .map(|w| w[1] as f64 / w[0] as f64)
        .collect();
    let k = ratio_estimates.len();
    let best = if k >= 2
        && ((ratio_estimates[k - 1] - ratio_estimates[k - 2]).abs()
            <= RATIO_AGREEMENT * ratio_estimates[k - 1].abs())
    {
        ratio_estimates[k - 1]
    } else {
        root_estimates.last().copied().unwrap_or(1.0)
    };
    DeltaEstimate {
        root_estimates,
        ratio_estimates,
        best,
        exact,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projmap::dsl::parse_map;

    fn degs(s: &str, n: usize) -> Vec<u64> {
        degree_sequence(&parse_map(s).unwrap(), n, Budget::default()).degs
    }

    #[test]
    fn sequences() {
        assert_eq!(degs("A2: (y^2, x)", 6), vec![2, 2, 4, 4, 8, 8]);
        assert_eq!(degs("A2: (x*y, y+1)", 6), vec![2, 3, 4, 5, 6, 7]);
        assert_eq!(degs("A2: (y, x*y)", 6), vec![2, 3, 5, 8, 13, 21]);
        assert_eq!(degs("A2: (2*x^2*y, x*y^2)", 3), vec![3, 9, 27]);
    }

    #[test]
    fn truncation_is_flagged() {
        let f = parse_map("A2: (x^2 + 3*y, 5*x*y + 7)").unwrap();
        let seq = degree_sequence(&f, 10, Budget::new(300));
        assert!(seq.truncated.as_deref().unwrap().contains("budget"));
        assert!(seq.degs.len() < 10);
    }

    #[test]
    fn estimates() {
        let fib = delta_estimate(&DegreeSequence::from_degrees(vec![2, 3, 5, 8, 13, 21, 34, 55]), None);
        assert!((fib.best - 55.0 / 34.0).abs() < 1e-12);
        let sq = delta_estimate(&DegreeSequence::from_degrees(vec![2, 2, 4, 4, 8, 8, 16, 16]), None);
        assert!((sq.best - 2f64.sqrt()).abs() < 1e-12);
        let lin = delta_estimate(&DegreeSequence::from_degrees(vec![2, 3, 4, 5, 6, 7]), None);
        assert!((lin.best - 7f64.powf(1.0 / 6.0)).abs() < 1e-12);
        assert_eq!(fib.ratio_estimates.len(), 7);
        assert_eq!(fib.root_estimates.len(), 8);
    }
}
