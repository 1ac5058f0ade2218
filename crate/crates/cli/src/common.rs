//! Shared plumbing: errors, map and point resolution, job fan-out.

use std::fmt::Write as _;
use std::num::NonZeroUsize;

use adegree_core::catalog::{example_with, guedj, parse_param, Params, CASE_IDS};
use adegree_core::heights::{h_plus, orbit_profile, OrbitProfile};
use adegree_core::poly::parse_rational;
use adegree_core::projmap::degree::{degree_sequence, delta_estimate, DegreeSequence, DeltaEstimate, ExactDelta};
use adegree_core::projmap::stability::{stability_analysis, BoundaryOrbit, StabilityVerdict};
use adegree_core::projmap::degree::default_max_n;
use adegree_core::projmap::parse_map;
use adegree_core::{Budget, Error, ProjPoint, Rational, RationalMap};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error as ThisError;

use crate::args::{MapSource, Points};
use crate::report::{fx, num, CsvTable, Defaults, RANDOM_BOUND};

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::Budget { .. }) => 3,
            _ => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Settings shared by every subcommand.
#[derive(Debug, Clone)]
pub struct Ctx {
    pub budget: Budget,
    pub seed: u64,
    pub parallel: bool,
    pub defaults: Defaults,
}

/// Output of one (map, point) job.
#[derive(Debug, Clone, Default)]
pub struct Job {
    pub value: Value,
    pub text: String,
    pub rows: Vec<Vec<String>>,
    pub pass: bool,
    pub budget: bool,
}

impl Job {
    pub fn failed(value: Value, text: String, err: &Error) -> Self {
        Job {
            value,
            text,
            rows: Vec::new(),
            pass: false,
            budget: matches!(err, Error::Budget { .. }),
        }
    }
}

/// Runs `f` on every item, on several threads when `parallel` is set;
/// results keep the input order.
pub fn run_jobs<T: Sync, R: Send>(items: &[T], parallel: bool, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let threads = std::thread::available_parallelism().map_or(1, NonZeroUsize::get);
    if !parallel || items.len() < 2 || threads < 2 {
        return items.iter().map(f).collect();
    }
    let chunk = items.len().div_ceil(threads);
    let f = &f;
    std::thread::scope(|s| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|c| s.spawn(move || c.iter().map(f).collect::<Vec<R>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker thread panicked"))
            .collect()
    })
}

pub fn parse_params(src: &[String]) -> CliResult<Params> {
    Ok(src.iter().map(|s| parse_param(s)).collect::<adegree_core::Result<_>>()?)
}

/// Catalog map with parameter overrides, by example name or case id.
pub fn catalog_entry_map(id: &str, params: &Params) -> CliResult<RationalMap> {
    if CASE_IDS.contains(&id) {
        Ok(guedj(id, params)?.map)
    } else {
        Ok(example_with(id, params)?.map)
    }
}

/// The map named on the command line and its echo for `inputs`.
pub fn resolve_map(src: &MapSource) -> CliResult<(RationalMap, Value)> {
    match (&src.map, &src.catalog) {
        (Some(text), None) => {
            let f = parse_map(text)?;
            Ok((f.clone(), json!({ "map": f.to_string(), "source": text })))
        }
        (None, Some(id)) => {
            let params = parse_params(&src.params)?;
            let f = catalog_entry_map(id, &params)?;
            let echo: serde_json::Map<String, Value> =
                params.iter().map(|(k, v)| (k.clone(), json!(v.to_string()))).collect();
            Ok((f.clone(), json!({ "map": f.to_string(), "catalog": id, "params": echo })))
        }
        (None, None) => Err(CliError::Usage("give a map or --catalog ID".into())),
        (Some(_), Some(_)) => Err(CliError::Usage("give either a map or --catalog, not both".into())),
    }
}

/// Integer points with `|x_i| <= 100` and a last coordinate in `1..=100`.
pub fn random_points(k: usize, nvars: usize, seed: u64) -> Vec<ProjPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..k)
        .map(|_| {
            let mut c: Vec<i64> = (0..nvars - 1)
                .map(|_| rng.gen_range(-RANDOM_BOUND..=RANDOM_BOUND))
                .collect();
            c.push(rng.gen_range(1..=RANDOM_BOUND));
            ProjPoint::from_ints(&c).expect("last coordinate is nonzero")
        })
        .collect()
}

/// Explicit points followed by `--random K` samples.
pub fn resolve_points(pts: &Points, nvars: usize, seed: u64) -> CliResult<Vec<ProjPoint>> {
    let mut out = pts
        .points
        .iter()
        .map(|s| ProjPoint::parse(s, nvars))
        .collect::<adegree_core::Result<Vec<_>>>()?;
    out.extend(random_points(pts.random.unwrap_or(0), nvars, seed));
    if out.is_empty() {
        return Err(CliError::Usage("give at least one --point or --random K".into()));
    }
    Ok(out)
}

/// Nonzero rational coordinates for a monomial map of dimension `dim`.
pub fn resolve_torus_points(pts: &Points, dim: usize, seed: u64) -> CliResult<Vec<Vec<Rational>>> {
    let mut out = Vec::new();
    for s in &pts.points {
        let v = s
            .split(',')
            .map(|c| parse_rational(c.trim()))
            .collect::<adegree_core::Result<Vec<_>>>()?;
        if v.len() != dim {
            return Err(CliError::Usage(format!("point {s:?} needs {dim} coordinates")));
        }
        out.push(v);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..pts.random.unwrap_or(0) {
        out.push(
            (0..dim)
                .map(|_| {
                    let x = rng.gen_range(1..=RANDOM_BOUND);
                    Rational::from_integer(if rng.gen() { x.into() } else { (-x).into() })
                })
                .collect(),
        );
    }
    if out.is_empty() {
        return Err(CliError::Usage("give at least one --point or --random K".into()));
    }
    Ok(out)
}

/// Degree sequence, stability analysis when available, and delta.
#[derive(Debug, Clone)]
pub struct DeltaInfo {
    pub seq: DegreeSequence,
    pub est: DeltaEstimate,
    pub stability: Option<Result<BoundaryOrbit, String>>,
}

impl DeltaInfo {
    pub fn compute(f: &RationalMap, n: usize, budget: Budget) -> Self {
        let seq = degree_sequence(f, n, budget);
        let stability = (f.nvars() == 3 && f.is_affine_extension())
            .then(|| stability_analysis(f).map_err(|e| e.to_string()));
        let exact = match &stability {
            Some(Ok(orbit)) => ExactDelta::from_stability(f, orbit),
            _ => None,
        };
        let est = delta_estimate(&seq, exact);
        DeltaInfo { seq, est, stability }
    }

    pub fn for_orbits(f: &RationalMap, budget: Budget) -> Self {
        Self::compute(f, default_max_n(f.degree()), budget)
    }

    pub fn value(&self) -> f64 {
        self.est.value()
    }

    pub fn describe(&self) -> String {
        match &self.est.exact {
            Some(e) => format!("{} (exact, {})", e.description, serde_json::to_value(e.source).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()),
            None => format!("{} (estimate from {} degrees)", fx(self.est.best), self.seq.degs.len()),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "degrees": self.seq,
            "estimate": self.est,
            "value": self.value(),
            "stability": self.stability.as_ref().map(|s| match s {
                Ok(o) => json!(o),
                Err(e) => json!({ "error": e }),
            }),
        })
    }
}

pub fn verdict_text(v: &StabilityVerdict) -> String {
    match v {
        StabilityVerdict::Stable => "STABLE".into(),
        StabilityVerdict::Unstable { step } => format!("UNSTABLE({step})"),
        StabilityVerdict::Cycle { period } => format!("STABLE (boundary cycle of period {period})"),
    }
}

pub fn orbit_text(orbit: &BoundaryOrbit) -> String {
    let mut s = verdict_text(&orbit.verdict);
    if orbit.heuristic {
        s.push_str(" (heuristic: no revisit within the step limit)");
    }
    s
}

/// Orbit table: `n, h, h/delta^n, h+^(1/n)` as text and CSV rows.
pub fn orbit_table(label: &str, heights: &[f64], delta: f64, text: &mut String, rows: &mut Vec<Vec<String>>) {
    let _ = writeln!(text, "  {:>4}  {:>14}  {:>14}  {:>10}", "n", "h", "h/delta^n", "root");
    for (n, &h) in heights.iter().enumerate() {
        let scaled = h / delta.powi(n as i32);
        let root = (n > 0).then(|| h_plus(h).powf(1.0 / n as f64));
        let _ = writeln!(
            text,
            "  {:>4}  {:>14}  {:>14}  {:>10}",
            n,
            fx(h),
            fx(scaled),
            root.map_or("-".into(), fx)
        );
        rows.push(vec![
            label.to_string(),
            n.to_string(),
            num(h),
            num(scaled),
            root.map_or(String::new(), num),
        ]);
    }
}

pub const ORBIT_HEADER: [&str; 5] = ["point", "n", "h", "h_over_delta_n", "root_estimate"];

pub fn orbit_csv() -> CsvTable {
    CsvTable {
        header: ORBIT_HEADER.to_vec(),
        rows: Vec::new(),
    }
}

/// Orbit profile or the job error it produced.
pub fn profile_or_job(
    f: &RationalMap,
    p: &ProjPoint,
    n: usize,
    budget: Budget,
) -> std::result::Result<OrbitProfile, Job> {
    orbit_profile(f, p, n, budget).map_err(|e| {
        Job::failed(
            json!({ "point": p, "error": e.to_string(), "pass": false }),
            format!("point {p}\n  error: {e}\n"),
            &e,
        )
    })
}
