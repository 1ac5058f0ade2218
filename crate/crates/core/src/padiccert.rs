//! p-adic growth certificates: the normal form at a fixed point at infinity,
//! prime selection, neighborhood membership and exact verification of the
//! growth laws along orbits.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::heights::{default_window, orbit_profile, weak_lower_canonical, weil_height};
use crate::poly::rational::{int_valuation, primes};
use crate::poly::text::VarNames;
use crate::poly::{Budget, HomPoly, Monomial, Rational};
use crate::projmap::{conjugate_linear, map_iterate, ProjPoint, RationalMap};

const GOLDEN: f64 = 1.618_033_988_749_895;

/// `f = [a X0^d + G_1, G_2, ..., G_N, c W^d]` where no `G_i` contains `X0^d`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixedPointForm {
    #[serde(skip)]
    pub map: RationalMap,
    #[serde(rename = "leadingCoefficient", serialize_with = "ser_rational")]
    pub leading_coefficient: Rational,
    #[serde(rename = "tailPolys", serialize_with = "ser_polys")]
    pub tail_polys: Vec<HomPoly>,
    pub degree: u32,
}

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

fn ser_polys<S: serde::Serializer>(v: &[HomPoly], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::Serialize as _;
    v.iter().map(|p| p.to_text()).collect::<Vec<_>>().serialize(s)
}

/// Result of the normal-form test; on failure names the first offending
/// monomial.
#[derive(Debug, Clone, PartialEq)]
pub enum NormalForm {
    Present(FixedPointForm),
    Absent { reason: String },
}

impl NormalForm {
    pub fn form(&self) -> Option<&FixedPointForm> {
        match self {
            NormalForm::Present(f) => Some(f),
            NormalForm::Absent { .. } => None,
        }
    }
}

fn monomial_text(m: &Monomial) -> String {
    let names = VarNames::projective(m.nvars());
    let parts: Vec<String> = m
        .0
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                names.name(i)
            } else {
                format!("{}^{}", names.name(i), e)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Syntactic test for the normal form with the first variable distinguished.
pub fn fixed_point_form(f: &RationalMap) -> NormalForm {
    let n = f.nvars();
    let d = f.degree();
    if !f.is_affine_extension() {
        return NormalForm::Absent {
            reason: "last coordinate is not a multiple of W^d".into(),
        };
    }
    let mut x0d = vec![0u32; n];
    x0d[0] = d;
    let x0d = Monomial::from_slice(&x0d);
    let first = &f.coords()[0];
    let a = match first.terms().get(&x0d) {
        Some(a) => a.clone(),
        None => {
            return NormalForm::Absent {
                reason: format!(
                    "first coordinate has no {} term",
                    monomial_text(&x0d)
                ),
            }
        }
    };
    let mut tails = Vec::with_capacity(n - 1);
    for (i, c) in f.coords()[..n - 1].iter().enumerate() {
        let tail = if i == 0 {
            c.sub(&HomPoly::from_terms(n, d, [(x0d.clone(), a.clone())]).unwrap())
                .unwrap()
        } else {
            if c.terms().contains_key(&x0d) {
                return NormalForm::Absent {
                    reason: format!(
                        "coordinate {} contains {}, which does not vanish at the fixed point",
                        i,
                        monomial_text(&x0d)
                    ),
                };
            }
            c.clone()
        };
        tails.push(tail);
    }
    NormalForm::Present(FixedPointForm {
        map: f.clone(),
        leading_coefficient: a,
        tail_polys: tails,
        degree: d,
    })
}

/// Swaps the first two affine coordinates of a map (a conjugation by a
/// coordinate permutation).
pub fn swap_first_two(f: &RationalMap) -> Result<RationalMap> {
    let n = f.nvars();
    let mut perm: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect();
    perm.swap(0, 1);
    conjugate_linear(f, &perm)
}

/// Tries both orderings of the affine coordinates of a planar map; returns
/// the form together with whether the coordinates were swapped.
pub fn fixed_point_form_search(f: &RationalMap) -> Result<Option<(bool, FixedPointForm)>> {
    if let NormalForm::Present(form) = fixed_point_form(f) {
        return Ok(Some((false, form)));
    }
    if f.nvars() == 3 {
        if let NormalForm::Present(form) = fixed_point_form(&swap_first_two(f)?) {
            return Ok(Some((true, form)));
        }
    }
    Ok(None)
}

/// Smallest prime at which every given rational is a unit.
pub fn choose_prime_for(coeffs: &[Rational]) -> u64 {
    primes()
        .find(|&p| {
            let bp = BigInt::from(p);
            coeffs
                .iter()
                .filter(|c| !c.is_zero())
                .all(|c| !c.numer().is_multiple_of(&bp) && !c.denom().is_multiple_of(&bp))
        })
        .expect("finitely many primes divide the coefficients")
}

/// Smallest prime at which every nonzero coefficient of `f` is a unit.
pub fn choose_prime(f: &RationalMap) -> u64 {
    let coeffs: Vec<Rational> = f
        .coords()
        .iter()
        .flat_map(|c| c.terms().values().cloned())
        .collect();
    choose_prime_for(&coeffs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum NeighborhoodKind {
    /// First coordinate a unit, the others in the maximal ideal.
    FixedPointU,
    /// `|x| > |y| > 1` and `|y|^d > |x|^(d-1)` for an affine `(x, y)`.
    Case3U,
    /// `|x| = |y| > 1`.
    Case11Set,
    /// `1 < |x| < |y|`.
    Case32Set,
}

impl NeighborhoodKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "fixed-point" | "fixed-point-u" => Ok(NeighborhoodKind::FixedPointU),
            "case3" | "case3-u" => Ok(NeighborhoodKind::Case3U),
            "case11" | "case11-set" => Ok(NeighborhoodKind::Case11Set),
            "case32" | "case32-set" => Ok(NeighborhoodKind::Case32Set),
            _ => Err(Error::InvalidArgument(format!(
                "unknown neighborhood kind {s:?} (fixed-point, case3, case11, case32)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NeighborhoodSpec {
    pub prime: u64,
    pub kind: NeighborhoodKind,
    /// Degree used by the `CASE3_U` inequality.
    pub degree: u32,
    pub conditions: Vec<String>,
}

impl NeighborhoodSpec {
    pub fn new(kind: NeighborhoodKind, prime: u64, degree: u32) -> Result<Self> {
        if !crate::poly::rational::is_prime(prime) {
            return Err(Error::InvalidPrime(prime.to_string()));
        }
        let conditions = match kind {
            NeighborhoodKind::FixedPointU => vec![
                "v(x_1) = 0".to_string(),
                "v(x_i) >= 1 for i >= 2".to_string(),
                "v(w) >= 1".to_string(),
            ],
            NeighborhoodKind::Case3U => vec![
                "v(x) < v(y) < 0".to_string(),
                format!("{d}*v(y) < {e}*v(x)", d = degree, e = degree.saturating_sub(1)),
            ],
            NeighborhoodKind::Case11Set => vec!["v(x) = v(y) < 0".to_string()],
            NeighborhoodKind::Case32Set => vec!["v(y) < v(x) < 0".to_string()],
        };
        Ok(NeighborhoodSpec {
            prime,
            kind,
            degree,
            conditions,
        })
    }
}

fn val(x: &BigInt, p: u64) -> Option<i64> {
    (!x.is_zero()).then(|| int_valuation(x, p))
}

/// Valuations of the affine coordinates `x_i / w`; `None` entries are zero
/// coordinates (valuation `+inf`).
fn affine_valuations(p: &ProjPoint, prime: u64) -> Option<Vec<Option<i64>>> {
    let c = p.coords();
    let w = c.last().unwrap();
    let vw = val(w, prime)?;
    Some(
        c[..c.len() - 1]
            .iter()
            .map(|x| val(x, prime).map(|v| v - vw))
            .collect(),
    )
}

pub fn in_neighborhood(p: &ProjPoint, spec: &NeighborhoodSpec) -> bool {
    let prime = spec.prime;
    match spec.kind {
        NeighborhoodKind::FixedPointU => {
            // on the coprime representative the minimal valuation is zero,
            // so the first coordinate must carry it alone
            let c = p.coords();
            val(&c[0], prime) == Some(0)
                && c[1..].iter().all(|x| val(x, prime).is_none_or(|v| v >= 1))
        }
        kind => {
            let Some(v) = affine_valuations(p, prime) else {
                return false;
            };
            if v.len() != 2 {
                return false;
            }
            let (Some(vx), Some(vy)) = (v[0], v[1]) else {
                return false;
            };
            match kind {
                NeighborhoodKind::Case3U => {
                    let d = spec.degree as i64;
                    vx < vy && vy < 0 && d * vy < (d - 1) * vx
                }
                NeighborhoodKind::Case11Set => vx == vy && vx < 0,
                NeighborhoodKind::Case32Set => vy < vx && vx < 0,
                NeighborhoodKind::FixedPointU => unreachable!(),
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GrowthLaw {
    /// `h(f^n P) >= d^n c`.
    Dn,
    /// `v(y_(n+1)) = v(x_n) + v(y_n)`, `v(x_(n+1)) = v(y_n)`.
    Fibonacci,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthCertificate {
    pub map: String,
    pub point: ProjPoint,
    pub prime: u64,
    pub kind: NeighborhoodKind,
    #[serde(rename = "lowerBound")]
    pub lower_bound: f64,
    #[serde(rename = "growthLaw")]
    pub growth_law: GrowthLaw,
    #[serde(rename = "verifiedSteps")]
    pub verified_steps: usize,
    pub pass: bool,
    /// First step at which the law failed.
    #[serde(rename = "failedAt", skip_serializing_if = "Option::is_none")]
    pub failed_at: Option<usize>,
    /// Whether the affine coordinates were swapped to reach the normal form.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub swapped: bool,
    #[serde(skip)]
    pub orbit: Vec<ProjPoint>,
}

fn fib_pair(n: usize) -> (BigInt, BigInt) {
    // (F_n, F_(n+1))
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..n {
        let t = &a + &b;
        a = std::mem::replace(&mut b, t);
    }
    (a, b)
}

/// Liminf of `-v(y_n) log p / phi^n` under the Fibonacci law.
pub fn fibonacci_bound(vx0: i64, vy0: i64, prime: u64) -> f64 {
    (GOLDEN * (-vy0) as f64 + (-vx0) as f64) / 5f64.sqrt() * (prime as f64).ln()
}

/// Largest deviation of `-v(y_n) log p / phi^n` from [`fibonacci_bound`] for
/// steps `n >= from`.
pub fn fibonacci_transient(vx0: i64, vy0: i64, prime: u64, from: usize) -> f64 {
    ((-vy0) as f64 / GOLDEN + (-vx0) as f64) / 5f64.sqrt()
        * GOLDEN.powi(-2 * from as i32)
        * (prime as f64).ln()
}

/// Issues and verifies a certificate for `P` in the given neighborhood.
pub fn certify(
    f: &RationalMap,
    p: &ProjPoint,
    spec: &NeighborhoodSpec,
    max_n: usize,
) -> Result<GrowthCertificate> {
    match spec.kind {
        NeighborhoodKind::FixedPointU => certify_fixed_point(f, p, spec, max_n),
        NeighborhoodKind::Case3U => certify_case3(f, p, spec, max_n),
        NeighborhoodKind::Case11Set | NeighborhoodKind::Case32Set => {
            certify_fibonacci(f, p, spec, max_n)
        }
    }
}

fn orbit_points(f: &RationalMap, p: &ProjPoint, max_n: usize) -> Result<Vec<ProjPoint>> {
    let prof = orbit_profile(f, p, max_n, Budget::unlimited())?;
    if let Some(t) = prof.truncated {
        return Err(Error::InvalidArgument(format!("orbit stopped early: {t:?}")));
    }
    Ok(prof.points)
}

fn swap_point(p: &ProjPoint) -> ProjPoint {
    let mut c = p.coords().to_vec();
    c.swap(0, 1);
    ProjPoint::new(c).expect("permutation keeps a valid point")
}

fn certify_fixed_point(
    f: &RationalMap,
    p: &ProjPoint,
    spec: &NeighborhoodSpec,
    max_n: usize,
) -> Result<GrowthCertificate> {
    let (swapped, form) = fixed_point_form_search(f)?.ok_or_else(|| {
        let reason = match fixed_point_form(f) {
            NormalForm::Absent { reason } => reason,
            NormalForm::Present(_) => unreachable!(),
        };
        Error::InvalidArgument(format!("no fixed-point normal form: {reason}"))
    })?;
    let g = &form.map;
    let q = if swapped { swap_point(p) } else { p.clone() };
    if !in_neighborhood(&q, spec) {
        return Err(Error::NotInNeighborhood(format!(
            "{} is not in the fixed-point neighborhood at p = {}",
            p, spec.prime
        )));
    }
    let prime = spec.prime;
    let k = int_valuation(q.coords().last().unwrap(), prime);
    let lower_bound = k as f64 * (prime as f64).ln();
    let orbit = orbit_points(g, &q, max_n)?;
    let d = BigInt::from(form.degree);
    let mut failed_at = None;
    let mut exponent = BigInt::from(k);
    for (n, pt) in orbit.iter().enumerate() {
        // the last coordinate carries exactly beta^(d^n) and nothing cancels
        let ok = in_neighborhood(pt, spec)
            && BigInt::from(int_valuation(pt.coords().last().unwrap(), prime)) == exponent
            && pt.max_abs() >= num_traits::pow(BigInt::from(prime), usize::try_from(&exponent).unwrap_or(usize::MAX));
        if !ok {
            failed_at = Some(n);
            break;
        }
        exponent *= &d;
    }
    Ok(GrowthCertificate {
        map: g.to_string(),
        point: q,
        prime,
        kind: spec.kind,
        lower_bound,
        growth_law: GrowthLaw::Dn,
        verified_steps: failed_at.map_or(max_n, |n| n.saturating_sub(1)),
        pass: failed_at.is_none(),
        failed_at,
        swapped,
        orbit,
    })
}

fn certify_case3(
    f: &RationalMap,
    p: &ProjPoint,
    spec: &NeighborhoodSpec,
    max_n: usize,
) -> Result<GrowthCertificate> {
    if !in_neighborhood(p, spec) {
        return Err(Error::NotInNeighborhood(format!(
            "{} is not in the case-3 neighborhood at p = {}",
            p, spec.prime
        )));
    }
    let prime = spec.prime;
    let d = f.degree() as i64;
    let orbit = orbit_points(f, p, max_n)?;
    let mut failed_at = None;
    for n in 1..orbit.len() {
        let prev = affine_valuations(&orbit[n - 1], prime).and_then(|v| v[1]);
        let cur = affine_valuations(&orbit[n], prime).and_then(|v| v[1]);
        let ok = in_neighborhood(&orbit[n], spec)
            && matches!((prev, cur), (Some(a), Some(b)) if b <= d * a);
        if !ok {
            failed_at = Some(n);
            break;
        }
    }
    Ok(GrowthCertificate {
        map: f.to_string(),
        point: p.clone(),
        prime,
        kind: spec.kind,
        lower_bound: 0.0,
        growth_law: GrowthLaw::Dn,
        verified_steps: failed_at.map_or(max_n, |n| n - 1),
        pass: failed_at.is_none(),
        failed_at,
        swapped: false,
        orbit,
    })
}

fn certify_fibonacci(
    f: &RationalMap,
    p: &ProjPoint,
    spec: &NeighborhoodSpec,
    max_n: usize,
) -> Result<GrowthCertificate> {
    if !in_neighborhood(p, spec) {
        return Err(Error::NotInNeighborhood(format!(
            "{} is not in {:?} at p = {}",
            p, spec.kind, spec.prime
        )));
    }
    let prime = spec.prime;
    let v0 = affine_valuations(p, prime).unwrap();
    let (vx0, vy0) = (v0[0].unwrap(), v0[1].unwrap());
    let orbit = orbit_points(f, p, max_n)?;
    let mut failed_at = None;
    for (n, pt) in orbit.iter().enumerate().skip(1) {
        let (fa, fb) = fib_pair(n);
        let (fm1, _) = fib_pair(n.saturating_sub(1));
        // v(y_n) = F_(n+1) v(y0) + F_n v(x0), v(x_n) = F_n v(y0) + F_(n-1) v(x0)
        let want_y = &fb * vy0 + &fa * vx0;
        let want_x = &fa * vy0 + &fm1 * vx0;
        let got = affine_valuations(pt, prime);
        let ok = matches!(got, Some(ref v) if v.len() == 2
            && v[0].map(BigInt::from) == Some(want_x.clone())
            && v[1].map(BigInt::from) == Some(want_y.clone()));
        if !ok {
            failed_at = Some(n);
            break;
        }
    }
    Ok(GrowthCertificate {
        map: f.to_string(),
        point: p.clone(),
        prime,
        kind: spec.kind,
        lower_bound: fibonacci_bound(vx0, vy0, prime),
        growth_law: GrowthLaw::Fibonacci,
        verified_steps: failed_at.map_or(max_n, |n| n - 1),
        pass: failed_at.is_none(),
        failed_at,
        swapped: false,
        orbit,
    })
}

/// Soundness link: the certified bound against an independent windowed
/// estimate of the weak lower canonical height. Returns
/// `(estimate, allowed_slack, holds)`.
pub fn soundness_check(f: &RationalMap, cert: &GrowthCertificate, delta: f64) -> Result<(f64, f64, bool)> {
    let prof = orbit_profile(f, &cert.point, cert.orbit.len() - 1, Budget::unlimited())?;
    let est = weak_lower_canonical(&prof, delta)?.value;
    let slack = match cert.growth_law {
        GrowthLaw::Dn => 0.0,
        GrowthLaw::Fibonacci => {
            let v = affine_valuations(&cert.point, cert.prime).unwrap();
            let from = prof.heights.len() - default_window(prof.heights.len() - 1);
            fibonacci_transient(v[0].unwrap(), v[1].unwrap(), cert.prime, from)
        }
    };
    Ok((est, slack, est >= cert.lower_bound - slack - 1e-12))
}

/// Certificate for a point whose orbit approaches a fixed point at infinity
/// of `f^m`: every `f^i(P)`, `0 <= i < m`, is certified for `f^m` and the
/// bounds are combined as `min_i delta_f^(-i) bound_i`.
pub fn certify_periodic(
    f: &RationalMap,
    m: usize,
    p: &ProjPoint,
    prime: Option<u64>,
    max_n: usize,
) -> Result<(RationalMap, Vec<GrowthCertificate>, f64)> {
    let g = map_iterate(f, m, Budget::default())?;
    let prime = prime.unwrap_or_else(|| choose_prime(&g));
    let spec = NeighborhoodSpec::new(NeighborhoodKind::FixedPointU, prime, g.degree())?;
    let delta_f = (g.degree() as f64).powf(1.0 / m as f64);
    let mut certs = Vec::with_capacity(m);
    let mut q = p.clone();
    let mut bound = f64::MAX;
    for i in 0..m {
        let c = certify_either_axis(&g, &q, &spec, max_n)?;
        bound = bound.min(c.lower_bound / delta_f.powi(i as i32));
        certs.push(c);
        q = f.apply(&q).map_err(|_| Error::Indeterminate(i + 1))?;
    }
    Ok((g, certs, bound))
}

/// Iterates of a periodic orbit approach different fixed points of `f^m`;
/// for plane maps a point near `[0:1:0]` is certified in swapped coordinates.
fn certify_either_axis(
    g: &RationalMap,
    q: &ProjPoint,
    spec: &NeighborhoodSpec,
    max_n: usize,
) -> Result<GrowthCertificate> {
    match certify(g, q, spec, max_n) {
        Err(Error::NotInNeighborhood(msg)) if g.nvars() == 3 => {
            let h = swap_first_two(g)?;
            if fixed_point_form(&h).form().is_none() || !in_neighborhood(&swap_point(q), spec) {
                return Err(Error::NotInNeighborhood(msg));
            }
            let mut c = certify(&h, &swap_point(q), spec, max_n)?;
            c.swapped = true;
            Ok(c)
        }
        other => other,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Case31Report {
    pub a: String,
    pub c: String,
    pub f2: String,
    #[serde(rename = "matchesDisplay")]
    pub matches_display: bool,
    #[serde(rename = "boundaryBaseLocusEmpty")]
    pub boundary_base_locus_empty: bool,
    /// Rational roots of `xi^2 - xi + a = 0`, empty when there are none.
    pub xi: Vec<String>,
    pub status: String,
    /// `[1, xi, 0]` is fixed by `f^2` for every listed root.
    #[serde(rename = "fixedPointsVerified")]
    pub fixed_points_verified: bool,
}

/// `[X^2 + aYZ + cZ^2, aX^2 + Y^2 + a^2 YZ + (a+1)cZ^2, Z^2]`.
pub fn case31_display(a: &Rational, c: &Rational) -> Result<RationalMap> {
    let m = |e: [u32; 3], k: Rational| (Monomial::from_slice(&e), k);
    let one = Rational::one();
    let first = HomPoly::from_terms(
        3,
        2,
        [m([2, 0, 0], one.clone()), m([0, 1, 1], a.clone()), m([0, 0, 2], c.clone())],
    )?;
    let second = HomPoly::from_terms(
        3,
        2,
        [
            m([2, 0, 0], a.clone()),
            m([0, 2, 0], one.clone()),
            m([0, 1, 1], a * a),
            m([0, 0, 2], (a + &one) * c),
        ],
    )?;
    let third = HomPoly::from_terms(3, 2, [m([0, 0, 2], one)])?;
    RationalMap::new(vec![first, second, third])
}

/// `(y, x^2 + a y + c)`.
pub fn case31_map(a: &Rational, c: &Rational) -> Result<RationalMap> {
    let m = |e: [u32; 3], k: Rational| (Monomial::from_slice(&e), k);
    let one = Rational::one();
    RationalMap::new(vec![
        HomPoly::from_terms(3, 2, [m([0, 1, 1], one.clone())])?,
        HomPoly::from_terms(
            3,
            2,
            [m([2, 0, 0], one.clone()), m([0, 1, 1], a.clone()), m([0, 0, 2], c.clone())],
        )?,
        HomPoly::from_terms(3, 2, [m([0, 0, 2], one)])?,
    ])
}

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| Rational::new(n, d))
}

/// Rational roots of `xi^2 - xi + a`.
pub fn case31_xi(a: &Rational) -> Vec<Rational> {
    let disc = Rational::one() - Rational::from_integer(BigInt::from(4)) * a;
    match rational_sqrt(&disc) {
        None => Vec::new(),
        Some(s) => {
            let two = Rational::from_integer(BigInt::from(2));
            let mut v = vec![(Rational::one() + &s) / &two, (Rational::one() - &s) / &two];
            v.dedup();
            v
        }
    }
}

pub fn case31_normal_form(a: &Rational, c: &Rational) -> Result<Case31Report> {
    let f = case31_map(a, c)?;
    let f2 = map_iterate(&f, 2, Budget::default())?;
    let display = case31_display(a, c)?;
    let fb = f2.coords()[0]
        .terms()
        .iter()
        .filter(|(m, _)| m.0[2] == 0)
        .map(|(m, q)| (m.clone(), q.clone()));
    let gb = f2.coords()[1]
        .terms()
        .iter()
        .filter(|(m, _)| m.0[2] == 0)
        .map(|(m, q)| (m.clone(), q.clone()));
    let fb = HomPoly::from_terms(3, f2.degree(), fb)?;
    let gb = HomPoly::from_terms(3, f2.degree(), gb)?;
    let boundary_base_locus_empty = if fb.is_zero() && gb.is_zero() {
        false
    } else {
        fb.gcd(&gb)?.degree() == 0
    };
    let xi = case31_xi(a);
    let mut fixed = true;
    for x in &xi {
        let pt = ProjPoint::from_rationals(&[Rational::one(), x.clone(), Rational::zero()])?;
        fixed &= f2.apply(&pt).ok() == Some(pt);
    }
    let status = if xi.is_empty() {
        "NO_RATIONAL_FIXED_POINT"
    } else {
        "RATIONAL_FIXED_POINT"
    };
    Ok(Case31Report {
        a: a.to_string(),
        c: c.to_string(),
        f2: f2.to_string(),
        matches_display: f2 == display,
        boundary_base_locus_empty,
        xi: xi.iter().map(|x| x.to_string()).collect(),
        status: status.into(),
        fixed_points_verified: !xi.is_empty() && fixed,
    })
}

/// Moves the fixed point `[1, xi, 0]` of `g` to `[1, 0, 0]` by
/// `Y -> Y + xi X`, returning the conjugated map.
pub fn move_fixed_point_to_origin(g: &RationalMap, xi: &Rational) -> Result<RationalMap> {
    let z = Rational::zero;
    let o = Rational::one;
    conjugate_linear(
        g,
        &[
            vec![o(), z(), z()],
            vec![xi.clone(), o(), z()],
            vec![z(), z(), o()],
        ],
    )
}

/// Exact check that `h(f^n P) >= d^n * bound` held along a computed orbit.
pub fn dn_bound_holds(orbit: &[ProjPoint], degree: u32, bound: f64) -> bool {
    orbit.iter().enumerate().all(|(n, pt)| {
        weil_height(pt) + 1e-9 * (1.0 + weil_height(pt)) >= (degree as f64).powi(n as i32) * bound
    })
}
