//! One function per subcommand, each producing an [`Outcome`].

use std::fmt::Write as _;

use adegree_core::catalog::{catalog_list, verify_entry, CaseReport, CheckStatus};
use adegree_core::heights::{
    alpha_estimate, canonical_plus, check_against, default_window, hcirc_iterate_identity, orbit_profile,
    weak_lower_canonical, Truncation, ESTIMATED_DELTA_TOL, EXACT_DELTA_TOL,
};
use adegree_core::monomial::{
    monomial_alpha_check, monomial_char_poly, monomial_orbit, newton_identities_hold, parse_matrix,
    spectral_enclosure,
};
use adegree_core::padiccert::{certify, certify_periodic, choose_prime, soundness_check, GrowthLaw, NeighborhoodKind, NeighborhoodSpec};
use adegree_core::projmap::stability::{stability_analysis_with, BoundaryVariety};
use adegree_core::projmap::degree::default_max_n;
use adegree_core::projmap::{map_iterate, parse_map};
use adegree_core::{Error, ProjPoint, RationalMap};
use serde_json::{json, Value};

use crate::args::{MapSource, Points};
use crate::common::{
    orbit_csv, orbit_table, orbit_text, parse_params, profile_or_job, resolve_map, resolve_points,
    resolve_torus_points, run_jobs, verdict_text, CliError, CliResult, Ctx, DeltaInfo, Job,
};
use crate::report::{fx, num, pass_word, CsvTable, Outcome, ReportDocument, SCHEMA};

const GOLDEN: f64 = 1.618_033_988_749_895;

fn document(ctx: &Ctx, command: &str, inputs: Value, results: Vec<Value>, pass: bool, budget: bool) -> ReportDocument {
    ReportDocument {
        schema: SCHEMA,
        version: env!("CARGO_PKG_VERSION"),
        command: command.into(),
        inputs,
        defaults: ctx.defaults.clone(),
        results,
        pass,
        budget_exceeded: budget,
    }
}

/// Merges per-point jobs under a common header.
fn finish_jobs(
    ctx: &Ctx,
    command: &str,
    inputs: Value,
    header: Value,
    mut text: String,
    mut csv: CsvTable,
    jobs: Vec<Job>,
) -> Outcome {
    let pass = jobs.iter().all(|j| j.pass);
    let budget = jobs.iter().any(|j| j.budget);
    let mut results = vec![header];
    for j in jobs {
        text.push_str(&j.text);
        csv.rows.extend(j.rows);
        results.push(j.value);
    }
    let _ = writeln!(text, "overall    {}", pass_word(pass));
    Outcome {
        doc: document(ctx, command, inputs, results, pass, budget),
        text,
        csv,
    }
}

fn with_n(mut inputs: Value, key: &str, v: Value) -> Value {
    inputs[key] = v;
    inputs
}

pub fn degseq(ctx: &Ctx, source: &MapSource, n: Option<usize>) -> CliResult<Outcome> {
    let (f, inputs) = resolve_map(source)?;
    let n = n.unwrap_or_else(|| default_max_n(f.degree()));
    let info = DeltaInfo::compute(&f, n, ctx.budget);
    let mut text = String::new();
    let _ = writeln!(text, "map        {f}");
    let degs: Vec<String> = info.seq.degs.iter().map(u64::to_string).collect();
    let _ = writeln!(text, "degrees    {}", degs.join(" "));
    if let Some(t) = &info.seq.truncated {
        let _ = writeln!(text, "truncated  {t}");
    }
    let _ = writeln!(text, "delta      {}", info.describe());
    match &info.stability {
        Some(Ok(o)) => {
            let _ = writeln!(text, "stability  {}", orbit_text(o));
        }
        Some(Err(e)) => {
            let _ = writeln!(text, "stability  unavailable: {e}");
        }
        None => {
            let _ = writeln!(text, "stability  not analysed (plane maps with an affine form only)");
        }
    }
    let _ = writeln!(text, "  {:>4}  {:>12}  {:>10}  {:>10}", "n", "deg(f^n)", "root", "ratio");
    let mut csv = CsvTable {
        header: vec!["n", "degree", "root_estimate", "ratio_estimate"],
        rows: Vec::new(),
    };
    for (i, d) in info.seq.degs.iter().enumerate() {
        let root = info.est.root_estimates[i];
        let ratio = i.checked_sub(1).and_then(|k| info.est.ratio_estimates.get(k).copied());
        let _ = writeln!(
            text,
            "  {:>4}  {:>12}  {:>10}  {:>10}",
            i + 1,
            d,
            fx(root),
            ratio.map_or("-".into(), fx)
        );
        csv.rows.push(vec![(i + 1).to_string(), d.to_string(), num(root), ratio.map_or(String::new(), num)]);
    }
    let budget = info.seq.budget_exceeded;
    let result = json!({ "map": f.to_string(), "delta": info.to_json() });
    Ok(Outcome {
        doc: document(ctx, "degseq", with_n(inputs, "n", json!(n)), vec![result], true, budget),
        text,
        csv,
    })
}

fn delta_header(f: &RationalMap, info: &DeltaInfo) -> (Value, String) {
    let mut text = String::new();
    let _ = writeln!(text, "map        {f}");
    let _ = writeln!(text, "delta      {}", info.describe());
    (json!({ "map": f.to_string(), "delta": info.to_json() }), text)
}

pub fn alpha(
    ctx: &Ctx,
    source: &MapSource,
    points: &Points,
    n: Option<usize>,
    window: Option<usize>,
    tol: Option<f64>,
) -> CliResult<Outcome> {
    let (f, inputs) = resolve_map(source)?;
    let pts = resolve_points(points, f.nvars(), ctx.seed)?;
    let n = n.unwrap_or_else(|| default_max_n(f.degree()));
    let info = DeltaInfo::for_orbits(&f, ctx.budget);
    let delta = info.value();
    let tol = tol.unwrap_or(if info.est.exact.is_some() { EXACT_DELTA_TOL } else { ESTIMATED_DELTA_TOL });
    let (header, mut text) = delta_header(&f, &info);
    let _ = writeln!(text, "tolerance  {tol}");
    let jobs = run_jobs(&pts, ctx.parallel, |p| alpha_job(&f, p, n, window, delta, tol, ctx));
    let inputs = with_n(inputs, "n", json!(n));
    let inputs = with_n(inputs, "points", json!(pts));
    let inputs = with_n(inputs, "window", json!(window));
    let inputs = with_n(inputs, "tol", json!(tol));
    Ok(finish_jobs(ctx, "alpha", inputs, header, text, orbit_csv(), jobs))
}

fn truncation_text(t: &Option<Truncation>) -> Option<String> {
    t.as_ref().map(|t| match t {
        Truncation::Indeterminacy { step } => format!("orbit hits the indeterminacy locus at step {step}"),
        Truncation::Budget { step } => format!("coefficient budget exceeded at step {step}"),
    })
}

fn alpha_job(f: &RationalMap, p: &ProjPoint, n: usize, window: Option<usize>, delta: f64, tol: f64, ctx: &Ctx) -> Job {
    let prof = match profile_or_job(f, p, n, ctx.budget) {
        Ok(prof) => prof,
        Err(job) => return job,
    };
    let budget = matches!(prof.truncated, Some(Truncation::Budget { .. }));
    let mut text = format!("point {p}  steps {}\n", prof.steps());
    if let Some(t) = truncation_text(&prof.truncated) {
        let _ = writeln!(text, "  {t}");
    }
    let mut rows = Vec::new();
    orbit_table(&p.to_string(), &prof.heights, delta, &mut text, &mut rows);
    let w = window.unwrap_or_else(|| default_window(prof.steps()));
    let base = json!({
        "point": p,
        "steps": prof.steps(),
        "truncated": prof.truncated,
        "heights": prof.heights,
        "heightBoundViolations": prof.height_bound_violations,
    });
    match alpha_estimate(&prof, w) {
        Ok(a) => {
            let check = check_against(&a, delta, tol);
            let pass = check.pass && prof.height_bound_violations.is_empty();
            let _ = writeln!(
                text,
                "  alpha upper {} lower {} (window {})",
                fx(a.upper),
                fx(a.lower),
                a.window
            );
            let _ = writeln!(
                text,
                "  inequality alpha <= delta + tol: {} (margin {})",
                pass_word(check.pass),
                fx(check.margin)
            );
            if !prof.height_bound_violations.is_empty() {
                let _ = writeln!(text, "  height bound violated at steps {:?}", prof.height_bound_violations);
            }
            let mut value = base;
            value["alpha"] = json!(a);
            value["check"] = json!(check);
            value["pass"] = json!(pass);
            Job { value, text, rows, pass, budget }
        }
        Err(e) => {
            let _ = writeln!(text, "  no estimate: {e}");
            let mut value = base;
            value["error"] = json!(e.to_string());
            value["pass"] = json!(false);
            Job { value, text, rows, pass: false, budget }
        }
    }
}

pub fn hcanon(ctx: &Ctx, source: &MapSource, points: &Points, n: Option<usize>, delta: Option<f64>) -> CliResult<Outcome> {
    let (f, inputs) = resolve_map(source)?;
    let pts = resolve_points(points, f.nvars(), ctx.seed)?;
    let n = n.unwrap_or_else(|| default_max_n(f.degree()));
    let info = DeltaInfo::for_orbits(&f, ctx.budget);
    let delta = delta.unwrap_or_else(|| info.value());
    let (header, text) = delta_header(&f, &info);
    let d = f.degree();
    let jobs = run_jobs(&pts, ctx.parallel, |p| {
        let prof = match profile_or_job(&f, p, n, ctx.budget) {
            Ok(prof) => prof,
            Err(job) => return job,
        };
        let mut text = format!("point {p}  steps {}\n", prof.steps());
        if let Some(t) = truncation_text(&prof.truncated) {
            let _ = writeln!(text, "  {t}");
        }
        let mut rows = Vec::new();
        orbit_table(&p.to_string(), &prof.heights, delta, &mut text, &mut rows);
        let plus = canonical_plus(&prof, d);
        let weak = weak_lower_canonical(&prof, delta);
        match &plus {
            Ok(c) => {
                let _ = writeln!(
                    text,
                    "  h^+ ~ {} (h(f^n P)/{d}^n at n = {}; Cauchy constant {})",
                    fx(c.value),
                    prof.steps(),
                    c.cauchy_constant.map_or("-".into(), fx)
                );
            }
            Err(e) => {
                let _ = writeln!(text, "  h^+ unavailable: {e}");
            }
        }
        match &weak {
            Ok(c) => {
                let _ = writeln!(text, "  weak lower ~ {} (delta {})", fx(c.value), fx(delta));
            }
            Err(e) => {
                let _ = writeln!(text, "  weak lower unavailable: {e}");
            }
        }
        let to_json = |r: &adegree_core::Result<_>| match r {
            Ok(c) => json!(c),
            Err(e) => json!({ "error": e.to_string() }),
        };
        Job {
            value: json!({
                "point": p,
                "steps": prof.steps(),
                "truncated": prof.truncated,
                "heights": prof.heights,
                "plus": to_json(&plus),
                "weakLower": to_json(&weak),
                "pass": true,
            }),
            text,
            rows,
            pass: true,
            budget: matches!(prof.truncated, Some(Truncation::Budget { .. })),
        }
    });
    let inputs = with_n(inputs, "n", json!(n));
    let inputs = with_n(inputs, "points", json!(pts));
    let inputs = with_n(inputs, "delta", json!(delta));
    Ok(finish_jobs(ctx, "hcanon", inputs, header, text, orbit_csv(), jobs))
}

#[allow(clippy::too_many_arguments)]
pub fn hcirc(
    ctx: &Ctx,
    source: &MapSource,
    points: &Points,
    period: usize,
    n: usize,
    delta: Option<f64>,
    tol: f64,
) -> CliResult<Outcome> {
    let (f, inputs) = resolve_map(source)?;
    let pts = resolve_points(points, f.nvars(), ctx.seed)?;
    if period < 2 {
        return Err(CliError::Usage("--period must be at least 2".into()));
    }
    let info = DeltaInfo::for_orbits(&f, ctx.budget);
    let delta = delta.unwrap_or_else(|| info.value());
    let fm = map_iterate(&f, period, ctx.budget)?;
    let (header, mut text) = delta_header(&f, &info);
    let _ = writeln!(text, "f^{period}       {fm}");
    let jobs = run_jobs(&pts, ctx.parallel, |p| {
        match hcirc_iterate_identity(&f, &fm, p, period, n, delta, ctx.budget) {
            Ok(r) => {
                let pass = r.relative_discrepancy <= tol;
                let terms: Vec<String> = r.terms.iter().map(|t| fx(*t)).collect();
                let mut text = format!("point {p}\n");
                let _ = writeln!(text, "  lhs {}  rhs {}  terms [{}]", fx(r.lhs), fx(r.rhs), terms.join(", "));
                let _ = writeln!(
                    text,
                    "  relative discrepancy {} <= {tol}: {}{}",
                    fx(r.relative_discrepancy),
                    pass_word(pass),
                    if r.truncated { " (orbits truncated)" } else { "" }
                );
                let rows = vec![vec![p.to_string(), num(r.lhs), num(r.rhs), num(r.relative_discrepancy)]];
                Job {
                    value: json!({ "point": p, "identity": r, "pass": pass }),
                    text,
                    rows,
                    pass,
                    budget: false,
                }
            }
            Err(e) => Job::failed(
                json!({ "point": p, "error": e.to_string(), "pass": false }),
                format!("point {p}\n  error: {e}\n"),
                &e,
            ),
        }
    });
    let csv = CsvTable {
        header: vec!["point", "lhs", "rhs", "relative_discrepancy"],
        rows: Vec::new(),
    };
    let inputs = with_n(inputs, "n", json!(n));
    let inputs = with_n(inputs, "period", json!(period));
    let inputs = with_n(inputs, "points", json!(pts));
    let inputs = with_n(inputs, "delta", json!(delta));
    let inputs = with_n(inputs, "tol", json!(tol));
    Ok(finish_jobs(ctx, "hcirc", inputs, header, text, csv, jobs))
}

fn variety_text(v: &BoundaryVariety) -> String {
    match v {
        BoundaryVariety::Line => "line {Z = 0}".into(),
        BoundaryVariety::Curve { phi } => format!("line {{Z = 0}} via [{} : {}]", phi[0], phi[1]),
        BoundaryVariety::Point { point } => format!("point {point}"),
        BoundaryVariety::Empty => "empty (indeterminacy locus)".into(),
    }
}

pub fn stable(ctx: &Ctx, source: &MapSource, max_steps: usize) -> CliResult<Outcome> {
    let (f, inputs) = resolve_map(source)?;
    let orbit = stability_analysis_with(&f, max_steps)?;
    let mut text = format!("map        {f}\nverdict    {}\n", orbit_text(&orbit));
    let mut csv = CsvTable {
        header: vec!["step", "variety"],
        rows: Vec::new(),
    };
    for (i, v) in orbit.varieties.iter().enumerate() {
        let _ = writeln!(text, "  f^{i}(L)  {}", variety_text(v));
        csv.rows.push(vec![i.to_string(), variety_text(v)]);
    }
    let result = json!({ "map": f.to_string(), "boundaryOrbit": orbit, "summary": verdict_text(&orbit.verdict) });
    let inputs = with_n(inputs, "maxSteps", json!(max_steps));
    Ok(Outcome {
        doc: document(ctx, "stable", inputs, vec![result], true, false),
        text,
        csv,
    })
}

pub fn monomial(ctx: &Ctx, matrix: &str, points: &Points, n: usize, tol: f64) -> CliResult<Outcome> {
    let a = parse_matrix(matrix)?;
    let cp = monomial_char_poly(&a)?;
    let newton = newton_identities_hold(&a, &cp);
    let enc = spectral_enclosure(&cp)?;
    let starts = resolve_torus_points(points, a.len(), ctx.seed)?;
    let moduli = enc.moduli();
    let mut text = String::new();
    let _ = writeln!(text, "matrix     {matrix}");
    let _ = writeln!(text, "charpoly   {}", cp.to_text());
    let _ = writeln!(text, "newton     {}", pass_word(newton));
    let _ = writeln!(text, "delta      {} in [{}, {}]", fx(enc.mid()), fx(enc.lo), fx(enc.hi));
    let mods: Vec<String> = moduli.iter().map(|m| fx(*m)).collect();
    let _ = writeln!(text, "|eigen|    {}", mods.join(" "));
    let header = json!({
        "matrix": a,
        "charPoly": { "text": cp.to_text(), "coeffs": cp },
        "newtonIdentities": newton,
        "delta": enc,
        "eigenModuli": moduli,
    });
    let delta = enc.mid();
    let mut jobs = run_jobs(&starts, ctx.parallel, |start| {
        let label: Vec<String> = start.iter().map(ToString::to_string).collect();
        let label = label.join(",");
        let res = monomial_orbit(&a, start, n).and_then(|o| monomial_alpha_check(&o, &a, tol).map(|c| (o, c)));
        match res {
            Ok((orbit, check)) => {
                let mut text = format!("point ({label})  primes {:?}\n", orbit.base_primes);
                let mut rows = Vec::new();
                orbit_table(&label, &orbit.heights, delta, &mut text, &mut rows);
                let _ = writeln!(
                    text,
                    "  alpha {} nearest |eigenvalue| {} distance {}: {}",
                    fx(check.alpha),
                    fx(check.nearest_eigen_modulus),
                    fx(check.distance),
                    pass_word(check.pass)
                );
                Job {
                    value: json!({
                        "point": label,
                        "basePrimes": orbit.base_primes,
                        "heights": orbit.heights,
                        "check": check,
                        "pass": check.pass,
                    }),
                    text,
                    rows,
                    pass: check.pass,
                    budget: false,
                }
            }
            Err(e) => Job::failed(
                json!({ "point": label, "error": e.to_string(), "pass": false }),
                format!("point ({label})\n  error: {e}\n"),
                &e,
            ),
        }
    });
    if !newton {
        jobs.push(Job {
            value: json!({ "newtonIdentities": false, "pass": false }),
            text: String::new(),
            ..Job::default()
        });
    }
    let inputs = json!({ "matrix": matrix, "n": n, "tol": tol, "points": starts.iter().map(|s| s.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>() });
    Ok(finish_jobs(ctx, "monomial", inputs, header, text, orbit_csv(), jobs))
}

#[allow(clippy::too_many_arguments)]
pub fn certify_cmd(
    ctx: &Ctx,
    source: &MapSource,
    point: &str,
    kind: &str,
    prime: Option<u64>,
    period: Option<usize>,
    n: Option<usize>,
) -> CliResult<Outcome> {
    let (f, inputs) = resolve_map(source)?;
    let n = n.unwrap_or_else(|| certify_steps(f.degree(), period.unwrap_or(1)));
    let kind = NeighborhoodKind::parse(kind)?;
    let p = ProjPoint::parse(point, f.nvars())?;
    let inputs = with_n(inputs, "point", json!(p));
    let inputs = with_n(inputs, "kind", json!(kind));
    let inputs = with_n(inputs, "prime", json!(prime));
    let inputs = with_n(inputs, "period", json!(period));
    let inputs = with_n(inputs, "n", json!(n));
    let mut text = format!("map        {f}\npoint      {p}\n");
    let (result, pass) = match period.filter(|&m| m > 1) {
        Some(m) => {
            if kind != NeighborhoodKind::FixedPointU {
                return Err(CliError::Usage("--period applies to --kind fixed-point only".into()));
            }
            match certify_periodic(&f, m, &p, prime, n) {
                Ok((g, certs, bound)) => {
                    let pass = certs.iter().all(|c| c.pass);
                    let _ = writeln!(text, "f^{m}       {g}");
                    for (i, c) in certs.iter().enumerate() {
                        let _ = writeln!(
                            text,
                            "  f^{i}(P) = {}  p = {}  bound {}  verified {} steps: {}",
                            c.point,
                            c.prime,
                            fx(c.lower_bound),
                            c.verified_steps,
                            pass_word(c.pass)
                        );
                    }
                    let _ = writeln!(text, "bound      {} for h_f", fx(bound));
                    (json!({ "period": m, "iterate": g.to_string(), "certificates": certs, "bound": bound, "pass": pass }), pass)
                }
                Err(e) => return certify_error(ctx, inputs, text, e),
            }
        }
        None => {
            let prime = prime.unwrap_or_else(|| choose_prime(&f));
            let spec = NeighborhoodSpec::new(kind, prime, f.degree())?;
            match certify(&f, &p, &spec, n) {
                Ok(cert) => {
                    let certified = parse_map(&cert.map)?;
                    let delta = match cert.growth_law {
                        GrowthLaw::Dn => certified.degree() as f64,
                        GrowthLaw::Fibonacci => GOLDEN,
                    };
                    let (estimate, slack, holds) = soundness_check(&certified, &cert, delta)?;
                    let pass = cert.pass && holds;
                    if cert.swapped {
                        let _ = writeln!(text, "normal form reached after swapping the first two coordinates");
                    }
                    let _ = writeln!(text, "prime      {}", cert.prime);
                    let _ = writeln!(text, "conditions {}", spec.conditions.join("; "));
                    let _ = writeln!(text, "law        {:?}", cert.growth_law);
                    let _ = writeln!(text, "bound      {}", fx(cert.lower_bound));
                    let _ = writeln!(
                        text,
                        "verified   {} steps: {}{}",
                        cert.verified_steps,
                        pass_word(cert.pass),
                        cert.failed_at.map_or(String::new(), |k| format!(" (law fails at step {k})"))
                    );
                    let _ = writeln!(
                        text,
                        "soundness  windowed estimate {} >= bound - {}: {}",
                        fx(estimate),
                        fx(slack),
                        pass_word(holds)
                    );
                    (
                        json!({
                            "neighborhood": spec,
                            "certificate": cert,
                            "soundness": { "delta": delta, "estimate": estimate, "slack": slack, "holds": holds },
                            "pass": pass,
                        }),
                        pass,
                    )
                }
                Err(e) => return certify_error(ctx, inputs, text, e),
            }
        }
    };
    let _ = writeln!(text, "overall    {}", pass_word(pass));
    Ok(Outcome {
        doc: document(ctx, "certify", inputs, vec![result], pass, false),
        text,
        csv: CsvTable::default(),
    })
}

/// Certified orbits are computed without a budget and their coordinates
/// have about `deg^n` digits, so the default depth keeps `deg^n <= 2^16`.
fn certify_steps(d: u32, m: usize) -> usize {
    let deg = (d as f64).powi(m as i32).max(2.0);
    ((16.0 * std::f64::consts::LN_2 / deg.ln()).floor() as usize).clamp(1, 10)
}

/// Normal-form and neighborhood failures are failed checks; parse errors
/// stay usage errors.
fn certify_error(ctx: &Ctx, inputs: Value, mut text: String, e: Error) -> CliResult<Outcome> {
    match e {
        Error::Parse { .. } | Error::InvalidPrime(_) | Error::ArityMismatch(..) | Error::Budget { .. } => Err(e.into()),
        e => {
            let _ = writeln!(text, "error      {e}\noverall    FAIL");
            Ok(Outcome {
                doc: document(ctx, "certify", inputs, vec![json!({ "error": e.to_string(), "pass": false })], false, false),
                text,
                csv: CsvTable::default(),
            })
        }
    }
}

pub fn catalog_list_cmd(ctx: &Ctx) -> CliResult<Outcome> {
    let entries = catalog_list()?;
    let mut text = format!("{:<14} {:<8} {:<16} map\n", "id", "kind", "delta");
    let mut csv = CsvTable {
        header: vec!["id", "kind", "expected_delta", "closed_form", "map"],
        rows: Vec::new(),
    };
    for e in &entries {
        let _ = writeln!(
            text,
            "{:<14} {:<8} {:<16} {}{}",
            e.id,
            e.kind,
            e.expected_delta.description,
            e.map,
            if e.representative { "  (representative)" } else { "" }
        );
        csv.rows.push(vec![
            e.id.clone(),
            e.kind.clone(),
            num(e.expected_delta.value),
            e.expected_delta.description.clone(),
            e.map.clone(),
        ]);
    }
    let results = entries.iter().map(|e| json!(e)).collect();
    Ok(Outcome {
        doc: document(ctx, "catalog list", json!({}), results, true, false),
        text,
        csv,
    })
}

fn case_text(r: &CaseReport) -> String {
    let mut text = format!(
        "{:<14} {}  delta {} (expected {})  {}\n",
        r.id,
        pass_word(r.pass),
        fx(r.delta.value()),
        r.expected_delta.description,
        r.map
    );
    for c in &r.checks {
        let status = match c.status {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skip => "skip",
        };
        let _ = writeln!(text, "    {status:<4} {}: {}", c.name, c.detail);
    }
    text
}

fn case_row(r: &CaseReport) -> Vec<String> {
    vec![
        r.id.clone(),
        pass_word(r.pass).into(),
        num(r.delta.value()),
        num(r.expected_delta.value),
        r.degrees.degs.iter().map(u64::to_string).collect::<Vec<_>>().join(" "),
    ]
}

fn verify_jobs(ctx: &Ctx, ids: &[String], params: &[(String, adegree_core::Rational)], tol: f64) -> CliResult<Vec<Job>> {
    let reports = run_jobs(ids, ctx.parallel, |id| verify_entry(id, params, tol));
    reports
        .into_iter()
        .map(|r| {
            let r = r?;
            Ok(Job {
                text: case_text(&r),
                rows: vec![case_row(&r)],
                pass: r.pass,
                budget: r.degrees.budget_exceeded,
                value: json!(r),
            })
        })
        .collect()
}

const CASE_HEADER: [&str; 5] = ["id", "status", "delta", "expected_delta", "degrees"];

pub fn catalog_verify(ctx: &Ctx, id: Option<&str>, all: bool, params: &[String], tol: f64) -> CliResult<Outcome> {
    let params = parse_params(params)?;
    let ids: Vec<String> = if all {
        if !params.is_empty() {
            return Err(CliError::Usage("--param needs a single catalog id".into()));
        }
        catalog_list()?.into_iter().map(|e| e.id).collect()
    } else {
        vec![id.expect("clap requires an id without --all").to_string()]
    };
    let jobs = verify_jobs(ctx, &ids, &params, tol)?;
    let echo: serde_json::Map<String, Value> = params.iter().map(|(k, v)| (k.clone(), json!(v.to_string()))).collect();
    let inputs = json!({ "ids": ids, "params": echo, "tol": tol });
    let pass = jobs.iter().all(|j| j.pass);
    let budget = jobs.iter().any(|j| j.budget);
    let mut text = String::new();
    let mut csv = CsvTable {
        header: CASE_HEADER.to_vec(),
        rows: Vec::new(),
    };
    let mut results = Vec::new();
    for j in jobs {
        text.push_str(&j.text);
        csv.rows.extend(j.rows);
        results.push(j.value);
    }
    let _ = writeln!(text, "overall    {}", pass_word(pass));
    Ok(Outcome {
        doc: document(ctx, "catalog verify", inputs, results, pass, budget),
        text,
        csv,
    })
}

/// Catalog verification plus a sweep of random orbits against each entry's
/// expected dynamical degree.
pub fn report(ctx: &Ctx, samples: usize, n: usize, tol: f64) -> CliResult<Outcome> {
    let entries = catalog_list()?;
    let ids: Vec<String> = entries.iter().map(|e| e.id.clone()).collect();
    let cases = verify_jobs(ctx, &ids, &[], tol)?;
    let mut sweep_items = Vec::new();
    for (k, e) in entries.iter().enumerate() {
        let f = adegree_core::catalog::catalog_map(&e.id)?;
        let pts = crate::common::random_points(samples, f.nvars(), ctx.seed.wrapping_add(k as u64));
        for p in pts {
            sweep_items.push((e.id.clone(), f.clone(), e.expected_delta.value, p));
        }
    }
    let sweep = run_jobs(&sweep_items, ctx.parallel, |(id, f, delta, p)| {
        sweep_job(id, f, *delta, p, n, ctx)
    });
    let mut text = String::from("catalog verification\n");
    let mut results = Vec::new();
    let mut pass = true;
    let mut budget = false;
    let mut csv = CsvTable {
        header: vec!["id", "point", "status", "alpha_upper", "delta", "margin"],
        rows: Vec::new(),
    };
    for j in cases {
        text.push_str(&j.text);
        pass &= j.pass;
        budget |= j.budget;
        results.push(j.value);
    }
    let _ = writeln!(text, "random orbit sweep (n = {n}, tolerance {ESTIMATED_DELTA_TOL})");
    let mut sweep_values = Vec::new();
    for j in sweep {
        text.push_str(&j.text);
        pass &= j.pass;
        budget |= j.budget;
        csv.rows.extend(j.rows);
        sweep_values.push(j.value);
    }
    results.push(json!({ "sweep": sweep_values }));
    let _ = writeln!(text, "overall    {}", pass_word(pass));
    let inputs = json!({ "samples": samples, "n": n, "tol": tol });
    Ok(Outcome {
        doc: document(ctx, "report", inputs, results, pass, budget),
        text,
        csv,
    })
}

fn sweep_job(id: &str, f: &RationalMap, delta: f64, p: &ProjPoint, n: usize, ctx: &Ctx) -> Job {
    let outcome = orbit_profile(f, p, n, ctx.budget).and_then(|prof| {
        let a = alpha_estimate(&prof, default_window(prof.steps()))?;
        Ok((prof, a))
    });
    match outcome {
        Ok((prof, a)) => {
            let check = check_against(&a, delta, ESTIMATED_DELTA_TOL);
            let status = pass_word(check.pass);
            let line = format!(
                "  {id:<14} {p:<28} {status} alpha {} delta {} margin {}\n",
                fx(a.upper),
                fx(delta),
                fx(check.margin)
            );
            Job {
                value: json!({ "id": id, "point": p, "steps": prof.steps(), "truncated": prof.truncated, "check": check, "status": status }),
                text: line,
                rows: vec![vec![id.into(), p.to_string(), status.into(), num(a.upper), num(delta), num(check.margin)]],
                pass: check.pass,
                budget: matches!(prof.truncated, Some(Truncation::Budget { .. })),
            }
        }
        Err(e) => {
            // starts in or mapping into the indeterminacy locus have no orbit to test
            let line = format!("  {id:<14} {p:<28} SKIP {e}\n");
            Job {
                value: json!({ "id": id, "point": p, "status": "SKIP", "reason": e.to_string() }),
                text: line,
                rows: vec![vec![id.into(), p.to_string(), "SKIP".into(), String::new(), num(delta), String::new()]],
                pass: true,
                budget: matches!(e, Error::Budget { .. }),
            }
        }
    }
}
