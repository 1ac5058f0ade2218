//! Weil heights along orbits, arithmetic-degree estimates and canonical
//! height estimates.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::rational::ln_bigint;
use crate::poly::Budget;
use crate::projmap::{DeltaEstimate, ProjPoint, RationalMap};

/// `log max |x_i|` over the coprime integer representative.
pub fn weil_height(p: &ProjPoint) -> f64 {
    ln_bigint(&p.max_abs())
}

/// `max(1, h)`.
pub fn h_plus(h: f64) -> f64 {
    h.max(1.0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Truncation {
    /// `points[step]` lies in the indeterminacy locus.
    Indeterminacy { step: usize },
    /// Computing `points[step]` would exceed the coefficient budget.
    Budget { step: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitProfile {
    #[serde(skip)]
    pub map: RationalMap,
    pub start: ProjPoint,
    /// `points[n] = f^n(start)`.
    pub points: Vec<ProjPoint>,
    pub heights: Vec<f64>,
    pub truncated: Option<Truncation>,
    /// Steps at which `h(f(P)) <= d h(P) + C_f` failed; always empty for a
    /// correct implementation.
    #[serde(rename = "heightBoundViolations")]
    pub height_bound_violations: Vec<usize>,
}

impl OrbitProfile {
    /// Number of iterations computed.
    pub fn steps(&self) -> usize {
        self.points.len() - 1
    }
}

/// Orbit of `p` under `f` for up to `max_n` steps, stopping at the first
/// indeterminate point or when a coordinate outgrows the budget.
pub fn orbit_profile(f: &RationalMap, p: &ProjPoint, max_n: usize, budget: Budget) -> Result<OrbitProfile> {
    if p.len() != f.nvars() {
        return Err(Error::ArityMismatch(f.nvars(), p.len()));
    }
    let mut points = vec![p.clone()];
    let mut heights = vec![weil_height(p)];
    let mut truncated = None;
    let mut violations = Vec::new();
    for step in 1..=max_n {
        let cur = points.last().unwrap();
        let next = match f.apply(cur) {
            Ok(q) => q,
            Err(Error::Indeterminate(_)) => {
                truncated = Some(Truncation::Indeterminacy { step: step - 1 });
                break;
            }
            Err(e) => return Err(e),
        };
        if !f.height_bound_holds(cur, &next) {
            violations.push(step);
        }
        let bits: u64 = next.coords().iter().map(|c| c.bits()).sum();
        if bits > budget.bits {
            truncated = Some(Truncation::Budget { step });
            break;
        }
        heights.push(weil_height(&next));
        points.push(next);
    }
    Ok(OrbitProfile {
        map: f.clone(),
        start: p.clone(),
        points,
        heights,
        truncated,
        height_bound_violations: violations,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlphaEstimate {
    pub upper: f64,
    pub lower: f64,
    pub window: usize,
    /// Fitted growth rates, see [`window_growth_rates`].
    #[serde(rename = "windowRates")]
    pub window_rates: Vec<f64>,
    /// `h+(f^n P)^(1/n)` for `n = 1, 2, ...`.
    #[serde(rename = "perStepRoots")]
    pub per_step_roots: Vec<f64>,
}

/// Default window: the trailing half of the profile.
pub fn default_window(steps: usize) -> usize {
    steps.div_ceil(2).max(1)
}

/// Least-squares fit of `L_k = log h+_k` against `k log(alpha) + p log(k) + c`
/// for `k` in `start..=end` (with `start >= 1`), returning `alpha`.
///
/// The `log k` term absorbs polynomial growth, which otherwise biases
/// finite-`n` estimates well above 1. When the fitted `p` is negative the
/// model is refitted with `p = 0`, so accelerating transients are not
/// extrapolated. Fitting over many steps averages out the height jitter
/// caused by cancellation between numerators and denominators.
pub fn growth_rate_fit(hplus: &[f64], start: usize, end: usize) -> f64 {
    let start = start.max(1);
    let ks: Vec<f64> = (start..=end).map(|k| k as f64).collect();
    let ls: Vec<f64> = (start..=end).map(|k| hplus[k].ln()).collect();
    fit_rate(&ks, &ls, hplus[end].powf(1.0 / end as f64))
}

/// Fit of `L_k = log h+_k` against `k log(alpha) + c` over `start..=end`,
/// for orbits known to have no polynomial factor in their growth.
pub fn geometric_rate_fit(hplus: &[f64], start: usize, end: usize) -> f64 {
    let start = start.max(1);
    let ks: Vec<f64> = (start..=end).map(|k| k as f64).collect();
    let ls: Vec<f64> = (start..=end).map(|k| hplus[k].ln()).collect();
    let slope = match ks.len() {
        0 => 0.0,
        1 => ls[0] / ks[0],
        _ => least_squares(&ks, &ls, false).map_or(0.0, |(slope, _)| slope),
    };
    slope.exp().max(1.0)
}

fn fit_rate(ks: &[f64], ls: &[f64], single: f64) -> f64 {
    let rate = match ks.len() {
        0 => 1.0,
        1 => single,
        2 => ((ls[1] - ls[0]) / (ks[1] - ks[0])).exp(),
        _ => {
            let with_log = least_squares(ks, ls, true);
            let slope = match with_log {
                Some((slope, p)) if p >= 0.0 => slope,
                _ => least_squares(ks, ls, false).map_or(0.0, |(slope, _)| slope),
            };
            slope.exp()
        }
    };
    rate.max(1.0)
}

/// Fits `y = a k + b log k + c` (or `y = a k + c`), returning `(a, b)`.
fn least_squares(ks: &[f64], ys: &[f64], with_log: bool) -> Option<(f64, f64)> {
    let rows: Vec<Vec<f64>> = ks
        .iter()
        .map(|&k| if with_log { vec![k, k.ln(), 1.0] } else { vec![k, 1.0] })
        .collect();
    let x = solve_normal(rows, ys)?;
    Some((x[0], if with_log { x[1] } else { 0.0 }))
}

/// Least-squares coefficients for the design matrix `rows` through the
/// normal equations, by Gaussian elimination with partial pivoting.
fn solve_normal(rows: Vec<Vec<f64>>, ys: &[f64]) -> Option<Vec<f64>> {
    let m = rows.first()?.len();
    let mut a = vec![vec![0.0; m + 1]; m];
    for (b, &y) in rows.iter().zip(ys) {
        for i in 0..m {
            for j in 0..m {
                a[i][j] += b[i] * b[j];
            }
            a[i][m] += b[i] * y;
        }
    }
    for col in 0..m {
        let piv = (col..m).max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))?;
        if a[piv][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, piv);
        for row in 0..m {
            if row != col {
                let f = a[row][col] / a[col][col];
                for j in col..=m {
                    a[row][j] -= f * a[col][j];
                }
            }
        }
    }
    Some((0..m).map(|i| a[i][m] / a[i][i]).collect())
}

/// Growth rates fitted by [`growth_rate_fit`] over `window + 1` consecutive
/// steps, one per end step in the last `ceil(window / 2)` steps of the
/// profile.
pub fn window_growth_rates(hplus: &[f64], window: usize) -> Vec<f64> {
    let last = hplus.len() - 1;
    let ends = window.div_ceil(2).max(1);
    (last + 1 - ends..=last)
        .map(|end| growth_rate_fit(hplus, end.saturating_sub(window), end))
        .collect()
}

pub fn alpha_estimate(profile: &OrbitProfile, window: usize) -> Result<AlphaEstimate> {
    let len = profile.heights.len();
    let window = window.max(1);
    if len < window + 2 {
        return Err(Error::ProfileTooShort {
            required: window + 2,
            actual: len,
        });
    }
    let hplus: Vec<f64> = profile.heights.iter().map(|&h| h_plus(h)).collect();
    let per_step_roots: Vec<f64> = (1..len).map(|n| hplus[n].powf(1.0 / n as f64)).collect();
    let window_rates = window_growth_rates(&hplus, window);
    let upper = window_rates.iter().cloned().fold(f64::MIN, f64::max);
    let lower = window_rates.iter().cloned().fold(f64::MAX, f64::min);
    Ok(AlphaEstimate {
        upper,
        lower,
        window,
        window_rates,
        per_step_roots,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CanonicalKind {
    Plus,
    WeakLower,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CanonicalEstimate {
    pub kind: CanonicalKind,
    pub value: f64,
    pub delta: f64,
    /// `h(f^n P) / delta^n`.
    pub samples: Vec<f64>,
    /// For `PLUS`: `max_n |s_(n+1) - s_n| delta^n`, the constant `C` of the
    /// geometric convergence bound.
    #[serde(rename = "cauchyConstant")]
    pub cauchy_constant: Option<f64>,
    /// Finite-`n` surrogate of a limit or liminf.
    pub estimate: bool,
}

fn samples(profile: &OrbitProfile, delta: f64) -> Vec<f64> {
    profile
        .heights
        .iter()
        .enumerate()
        .map(|(n, h)| h / delta.powi(n as i32))
        .collect()
}

/// `h(f^N P) / d^N` at the last computed step.
pub fn canonical_plus(profile: &OrbitProfile, d: u32) -> Result<CanonicalEstimate> {
    if d <= 1 {
        return Err(Error::InvalidArgument("canonical height requires degree d > 1".into()));
    }
    let delta = d as f64;
    let s = samples(profile, delta);
    let cauchy = s
        .windows(2)
        .enumerate()
        .map(|(n, w)| (w[1] - w[0]).abs() * delta.powi(n as i32))
        .fold(0.0, f64::max);
    Ok(CanonicalEstimate {
        kind: CanonicalKind::Plus,
        value: *s.last().unwrap(),
        delta,
        samples: s,
        cauchy_constant: Some(cauchy),
        estimate: true,
    })
}

/// Minimum of `h(f^n P) / delta^n` over the trailing half of the profile.
pub fn weak_lower_canonical(profile: &OrbitProfile, delta: f64) -> Result<CanonicalEstimate> {
    if delta <= 1.0 {
        return Err(Error::InvalidArgument(
            "weak lower canonical height requires dynamical degree > 1".into(),
        ));
    }
    let s = samples(profile, delta);
    let w = default_window(s.len() - 1).min(s.len());
    let value = s[s.len() - w..].iter().cloned().fold(f64::MAX, f64::min);
    Ok(CanonicalEstimate {
        kind: CanonicalKind::WeakLower,
        value,
        delta,
        samples: s,
        cauchy_constant: None,
        estimate: true,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityCheck {
    pub pass: bool,
    pub upper: f64,
    pub delta: f64,
    pub tol: f64,
    /// `delta + tol - upper`; negative on failure.
    pub margin: f64,
}

/// Tolerance when the dynamical degree is estimated from a degree sequence.
pub const ESTIMATED_DELTA_TOL: f64 = 0.05;
/// Tolerance when the dynamical degree is known exactly.
pub const EXACT_DELTA_TOL: f64 = 1e-9;

pub fn check_against(alpha: &AlphaEstimate, delta: f64, tol: f64) -> InequalityCheck {
    let margin = delta + tol - alpha.upper;
    InequalityCheck {
        pass: margin >= 0.0,
        upper: alpha.upper,
        delta,
        tol,
        margin,
    }
}

/// `upper <= delta.best + tol`.
pub fn check_fundamental_inequality(alpha: &AlphaEstimate, delta: &DeltaEstimate, tol: f64) -> InequalityCheck {
    check_against(alpha, delta.best, tol)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IterateIdentityReport {
    pub m: usize,
    #[serde(rename = "maxN")]
    pub max_n: usize,
    pub lhs: f64,
    pub rhs: f64,
    /// `delta_f^(-i) * hcirc_{f^m}(f^i P)` for `i = 0..m`.
    pub terms: Vec<f64>,
    #[serde(rename = "relativeDiscrepancy")]
    pub relative_discrepancy: f64,
    pub truncated: bool,
}

/// Both sides of `hcirc_f(P) = min_i delta_f^(-i) hcirc_{f^m}(f^i P)` with
/// finite surrogates: the left side uses `m * max_n` steps of `f`, each term
/// on the right `max_n` steps of `f^m`.
pub fn hcirc_iterate_identity(
    f: &RationalMap,
    fm: &RationalMap,
    p: &ProjPoint,
    m: usize,
    max_n: usize,
    delta_f: f64,
    budget: Budget,
) -> Result<IterateIdentityReport> {
    if m < 2 {
        return Err(Error::InvalidArgument("period m must be at least 2".into()));
    }
    let long = orbit_profile(f, p, m * max_n, budget)?;
    let mut truncated = long.truncated.is_some();
    let lhs = weak_lower_canonical(&long, delta_f)?.value;
    let delta_m = delta_f.powi(m as i32);
    let mut terms = Vec::with_capacity(m);
    for i in 0..m {
        let q = long
            .points
            .get(i)
            .ok_or(Error::Indeterminate(long.steps()))?;
        let prof = orbit_profile(fm, q, max_n, budget)?;
        truncated |= prof.truncated.is_some();
        terms.push(weak_lower_canonical(&prof, delta_m)?.value / delta_f.powi(i as i32));
    }
    let rhs = terms.iter().cloned().fold(f64::MAX, f64::min);
    let scale = lhs.abs().max(rhs.abs());
    let relative_discrepancy = if scale == 0.0 { 0.0 } else { (lhs - rhs).abs() / scale };
    Ok(IterateIdentityReport {
        m,
        max_n,
        lhs,
        rhs,
        terms,
        relative_discrepancy,
        truncated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projmap::{map_iterate, parse_map};

    fn pt(c: &[i64]) -> ProjPoint {
        ProjPoint::from_ints(c).unwrap()
    }

    fn profile(s: &str, p: &[i64], n: usize) -> OrbitProfile {
        orbit_profile(&parse_map(s).unwrap(), &pt(p), n, Budget::default()).unwrap()
    }

    const LN2: f64 = std::f64::consts::LN_2;

    #[test]
    fn weil_height_examples() {
        assert!((weil_height(&pt(&[2, 3, 1])) - 3f64.ln()).abs() < 1e-15);
        assert_eq!(weil_height(&pt(&[1, 0, 0])), 0.0);
        assert!((weil_height(&pt(&[1, 2, 2])) - LN2).abs() < 1e-15);
    }

    #[test]
    fn orbit_examples() {
        let pr = profile("P2: [X^2, Y^2, Z^2]", &[2, 1, 1], 5);
        for (n, h) in pr.heights.iter().enumerate() {
            assert!((h - (1u64 << n) as f64 * LN2).abs() < 1e-9);
        }
        let fib = profile("A2: (y, x*y)", &[2, 3, 1], 10);
        let (mut a, mut b) = (0f64, 1f64);
        for h in &fib.heights {
            assert!((h - (a * LN2 + b * 3f64.ln())).abs() < 1e-9);
            (a, b) = (b, a + b);
        }
        let stuck = profile("P2: [Y^2, X*Z, Z^2]", &[1, 0, 0], 5);
        assert_eq!(stuck.truncated, Some(Truncation::Indeterminacy { step: 0 }));
        assert_eq!(stuck.points.len(), 1);
        assert!(fib.height_bound_violations.is_empty());
    }

    #[test]
    fn alpha_examples() {
        let a = alpha_estimate(&profile("P2: [X^2, Y^2, Z^2]", &[2, 1, 1], 12), 6).unwrap();
        assert!((a.upper - 2.0).abs() < 1e-9 && (a.lower - 2.0).abs() < 1e-9);
        let fixed = alpha_estimate(&profile("P2: [X^2, Y^2, Z^2]", &[1, 1, 1], 10), 5).unwrap();
        assert_eq!((fixed.upper, fixed.lower), (1.0, 1.0));
        let fib = profile("A2: (y, x*y)", &[2, 3, 1], 15);
        let a = alpha_estimate(&fib, default_window(15)).unwrap();
        assert!((a.upper - 1.618).abs() < 0.05);
        assert_eq!(a.per_step_roots.len(), 15);
        assert!(matches!(
            alpha_estimate(&fib, 20),
            Err(Error::ProfileTooShort { required: 22, .. })
        ));
    }

    #[test]
    fn canonical_examples() {
        let pr = profile("P2: [X^2, Y^2, Z^2]", &[2, 1, 1], 8);
        let c = canonical_plus(&pr, 2).unwrap();
        assert!(c.samples.iter().all(|s| (s - LN2).abs() < 1e-12));
        let pre = canonical_plus(&profile("P2: [X^2, Y^2, Z^2]", &[1, 1, 1], 8), 2).unwrap();
        assert_eq!(pre.value, 0.0);
        let t9 = canonical_plus(&profile("P2: [X^2 + Y*Z, Y^2, Z^2]", &[1, 2, 2], 8), 2).unwrap();
        assert!(t9.value >= LN2);
        assert!(canonical_plus(&pr, 1).is_err());

        let w = weak_lower_canonical(&pr, 2.0).unwrap();
        assert!((w.value - LN2).abs() < 1e-12);
        assert!(w.value <= c.value + 1e-12);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let fib = weak_lower_canonical(&profile("A2: (y, x*y)", &[2, 3, 1], 15), phi).unwrap();
        let expect = (LN2 + phi * 3f64.ln()) / 5f64.sqrt();
        assert!((fib.value - expect).abs() < 0.05 * expect);
        assert!(weak_lower_canonical(&pr, 1.0).is_err());
    }

    #[test]
    fn inequality_checks() {
        let a = alpha_estimate(&profile("P2: [X^2, Y^2, Z^2]", &[2, 1, 1], 10), 5).unwrap();
        assert!(check_against(&a, 2.0, EXACT_DELTA_TOL).pass);
        let fake = AlphaEstimate {
            upper: 3.0,
            lower: 3.0,
            window: 1,
            window_rates: vec![3.0],
            per_step_roots: vec![],
        };
        let c = check_against(&fake, 2.0, 0.05);
        assert!(!c.pass && c.margin < 0.0);
    }

    #[test]
    fn iterate_identity() {
        let f = parse_map("A2: (y^2, x)").unwrap();
        let f2 = map_iterate(&f, 2, Budget::default()).unwrap();
        let r = hcirc_iterate_identity(&f, &f2, &pt(&[2, 3, 1]), 2, 8, 2f64.sqrt(), Budget::default()).unwrap();
        assert!(r.relative_discrepancy < 1e-2, "{r:?}");
        let sq = parse_map("P2: [X^2, Y^2, Z^2]").unwrap();
        let sq2 = map_iterate(&sq, 2, Budget::default()).unwrap();
        let r = hcirc_iterate_identity(&sq, &sq2, &pt(&[2, 1, 1]), 2, 6, 2.0, Budget::default()).unwrap();
        assert!((r.lhs - LN2).abs() < 1e-12 && (r.rhs - LN2).abs() < 1e-12);
        let r = hcirc_iterate_identity(&sq, &sq2, &pt(&[1, 1, 1]), 2, 6, 2.0, Budget::default()).unwrap();
        assert_eq!((r.lhs, r.rhs), (0.0, 0.0));
    }
}
