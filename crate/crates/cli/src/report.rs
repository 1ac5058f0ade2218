//! Report documents and their text, JSON and CSV renderings.

use std::io::{self, Write};

use adegree_core::heights::{ESTIMATED_DELTA_TOL, EXACT_DELTA_TOL};
use adegree_core::monomial::ALPHA_EIGEN_TOL;
use adegree_core::poly::DEFAULT_BUDGET_BITS;
use adegree_core::projmap::stability::DEFAULT_MAX_STEPS;
use serde::Serialize;
use serde_json::Value;

use crate::args::Format;

pub const SCHEMA: &str = "adegree/1";

/// Every default the CLI applies, echoed in each JSON report.
#[derive(Debug, Clone, Serialize)]
pub struct Defaults {
    #[serde(rename = "budgetBits")]
    pub budget_bits: u64,
    #[serde(rename = "maxNQuadratic")]
    pub max_n_quadratic: usize,
    #[serde(rename = "maxNCubic")]
    pub max_n_cubic: usize,
    #[serde(rename = "maxNHigher")]
    pub max_n_higher: usize,
    pub window: &'static str,
    #[serde(rename = "estimatedDeltaTol")]
    pub estimated_delta_tol: f64,
    #[serde(rename = "exactDeltaTol")]
    pub exact_delta_tol: f64,
    #[serde(rename = "alphaEigenTol")]
    pub alpha_eigen_tol: f64,
    #[serde(rename = "stabilityMaxSteps")]
    pub stability_max_steps: usize,
    #[serde(rename = "certifySteps")]
    pub certify_steps: usize,
    #[serde(rename = "monomialSteps")]
    pub monomial_steps: usize,
    #[serde(rename = "hcircPeriod")]
    pub hcirc_period: usize,
    #[serde(rename = "hcircSteps")]
    pub hcirc_steps: usize,
    #[serde(rename = "catalogTol")]
    pub catalog_tol: f64,
    pub seed: u64,
    #[serde(rename = "randomCoordinateBound")]
    pub random_coordinate_bound: i64,
}

pub const RANDOM_BOUND: i64 = 100;

impl Defaults {
    pub fn new(budget_bits: u64, seed: u64) -> Self {
        Defaults {
            budget_bits,
            max_n_quadratic: 12,
            max_n_cubic: 8,
            max_n_higher: 6,
            window: "ceil(steps/2)",
            estimated_delta_tol: ESTIMATED_DELTA_TOL,
            exact_delta_tol: EXACT_DELTA_TOL,
            alpha_eigen_tol: ALPHA_EIGEN_TOL,
            stability_max_steps: DEFAULT_MAX_STEPS,
            certify_steps: 10,
            monomial_steps: 20,
            hcirc_period: 2,
            hcirc_steps: 8,
            catalog_tol: 1e-2,
            seed,
            random_coordinate_bound: RANDOM_BOUND,
        }
    }
}

impl Default for Defaults {
    fn default() -> Self {
        Self::new(DEFAULT_BUDGET_BITS, 0)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    pub schema: &'static str,
    pub version: &'static str,
    pub command: String,
    pub inputs: Value,
    pub defaults: Defaults,
    pub results: Vec<Value>,
    pub pass: bool,
    #[serde(rename = "budgetExceeded")]
    pub budget_exceeded: bool,
}

impl ReportDocument {
    /// 0 when every check passes, 1 on a failed check, 3 when a budget cut
    /// the computation short without any check failing.
    pub fn exit_code(&self) -> u8 {
        if !self.pass {
            1
        } else if self.budget_exceeded {
            3
        } else {
            0
        }
    }
}

/// Rows for `--format csv`.
#[derive(Debug, Clone, Default)]
pub struct CsvTable {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

/// A finished command: the document plus its human-readable rendering.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub doc: ReportDocument,
    pub text: String,
    pub csv: CsvTable,
}

pub fn emit(out: &Outcome, format: Format, w: &mut impl Write) -> io::Result<()> {
    match format {
        Format::Text => w.write_all(out.text.as_bytes()),
        Format::Json => {
            serde_json::to_writer_pretty(&mut *w, &out.doc)?;
            writeln!(w)
        }
        Format::Csv => {
            let mut cw = csv::Writer::from_writer(w);
            cw.write_record(&out.csv.header)?;
            for row in &out.csv.rows {
                cw.write_record(row)?;
            }
            cw.flush()
        }
    }
}

/// Shortest round-trip representation; empty for non-finite values.
pub fn num(x: f64) -> String {
    if x.is_finite() {
        x.to_string()
    } else {
        String::new()
    }
}

/// Fixed-precision value for text tables.
pub fn fx(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.6}")
    } else {
        "-".into()
    }
}

pub fn pass_word(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}
