//! Command-line grammar.

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "adegree",
    version,
    about = "Dynamical degrees, arithmetic degrees, canonical heights and p-adic growth certificates for rational self-maps of projective space over Q",
    after_help = "Maps are written `A2: (y^2, x)` (affine) or `P2: [Y^2, X*Z, Z^2]` (projective).\n\
Points are affine (`2,3`) or projective (`2,3,1`); rationals such as `1/2` are accepted.\n\
Exit codes: 0 all checks pass, 1 a check failed, 2 usage or parse error, 3 budget exceeded.\n\
ADEGREE_BUDGET_BITS overrides the coefficient budget (default 1048576 bits)."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Seed for randomly sampled start points.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,

    /// Run independent (map, point) jobs on several threads; output order
    /// is unchanged.
    #[arg(long, global = true)]
    pub parallel: bool,

    /// Coefficient budget in bits [default: ADEGREE_BUDGET_BITS or 1048576].
    #[arg(long, global = true)]
    pub budget_bits: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// A map given as DSL text or as a catalog entry.
#[derive(Debug, Clone, Args)]
pub struct MapSource {
    /// Map in the DSL, e.g. "A2: (y, x*y)".
    pub map: Option<String>,

    /// Catalog id instead of a DSL map (see `adegree catalog list`).
    #[arg(long, conflicts_with = "map")]
    pub catalog: Option<String>,

    /// Catalog parameter override `name=value`; repeatable.
    #[arg(long = "param", value_name = "K=V", requires = "catalog")]
    pub params: Vec<String>,
}

#[derive(Debug, Clone, Args)]
pub struct Points {
    /// Start point, affine `2,3` or projective `2,3,1`; repeatable.
    #[arg(long = "point", value_name = "COORDS", allow_hyphen_values = true)]
    pub points: Vec<String>,

    /// Add this many random integer start points of height at most log 100.
    #[arg(long, value_name = "K")]
    pub random: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Degree sequence deg(f^n), dynamical degree estimates and stability.
    Degseq {
        #[command(flatten)]
        source: MapSource,
        /// Number of iterates [default: 12 for degree 2, 8 for degree 3].
        #[arg(long)]
        n: Option<usize>,
    },
    /// Orbit heights, arithmetic degree estimates and the fundamental
    /// inequality.
    Alpha {
        #[command(flatten)]
        source: MapSource,
        #[command(flatten)]
        points: Points,
        /// Orbit length [default: 12 for degree 2, 8 for degree 3].
        #[arg(long)]
        n: Option<usize>,
        /// Fit window [default: ceil(n/2)].
        #[arg(long)]
        window: Option<usize>,
        /// Inequality tolerance [default: 1e-9 for exact delta, 0.05 otherwise].
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Canonical height h(f^n P)/d^n and weak lower canonical height.
    Hcanon {
        #[command(flatten)]
        source: MapSource,
        #[command(flatten)]
        points: Points,
        /// Orbit length [default: 12 for degree 2, 8 for degree 3].
        #[arg(long)]
        n: Option<usize>,
        /// Dynamical degree for the weak lower height [default: estimated].
        #[arg(long)]
        delta: Option<f64>,
    },
    /// Both sides of the iterate identity for the weak lower canonical height.
    Hcirc {
        #[command(flatten)]
        source: MapSource,
        #[command(flatten)]
        points: Points,
        /// Iterate f^m used on the right-hand side.
        #[arg(long, default_value_t = 2)]
        period: usize,
        /// Steps of f^m per term.
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// Dynamical degree of f [default: estimated].
        #[arg(long)]
        delta: Option<f64>,
        /// Allowed relative discrepancy.
        #[arg(long, default_value_t = 1e-2)]
        tol: f64,
    },
    /// Boundary orbit and algebraic stability verdict (maps of the plane).
    Stable {
        #[command(flatten)]
        source: MapSource,
        /// Boundary orbit steps before stability is declared heuristically.
        #[arg(long, default_value_t = 16)]
        max_steps: usize,
    },
    /// Monomial map of an integer matrix: characteristic polynomial,
    /// spectral radius and orbit growth.
    Monomial {
        /// Row-major matrix such as "[[0,2],[1,0]]".
        matrix: String,
        #[command(flatten)]
        points: Points,
        /// Orbit length.
        #[arg(long, default_value_t = 20)]
        n: usize,
        /// Distance allowed between the growth rate and an eigenvalue modulus.
        #[arg(long, default_value_t = 0.05)]
        tol: f64,
    },
    /// p-adic certificate of height growth for an orbit.
    Certify {
        #[command(flatten)]
        source: MapSource,
        /// Start point.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// Neighborhood: fixed-point, case3, case11 or case32.
        #[arg(long, default_value = "fixed-point")]
        kind: String,
        /// Prime [default: smallest prime not dividing the relevant coefficients].
        #[arg(long)]
        prime: Option<u64>,
        /// Certify f^m for a point approaching an m-periodic point at infinity.
        #[arg(long)]
        period: Option<usize>,
        /// Steps verified [default: 10, fewer when deg(f^m)^n would exceed 2^16].
        #[arg(long)]
        n: Option<usize>,
    },
    /// Worked examples and the classification table.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Verifies the whole catalog and sweeps random orbits of every entry.
    Report {
        /// Random start points per catalog map.
        #[arg(long, default_value_t = 5)]
        samples: usize,
        /// Orbit length for the sweep.
        #[arg(long, default_value_t = 12)]
        n: usize,
        /// Tolerance for catalog delta checks.
        #[arg(long, default_value_t = 1e-2)]
        tol: f64,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    /// Lists every entry with its expected dynamical degree.
    List,
    /// Recomputes the expectations of one entry, or of all with --all.
    Verify {
        /// Catalog id.
        #[arg(required_unless_present = "all")]
        id: Option<String>,
        /// Verify every entry.
        #[arg(long, conflicts_with = "id")]
        all: bool,
        /// Parameter override `name=value`; repeatable.
        #[arg(long = "param", value_name = "K=V")]
        params: Vec<String>,
        /// Tolerance for delta estimates.
        #[arg(long, default_value_t = 1e-2)]
        tol: f64,
    },
}
