//! `adegree`: command-line front end for the adegree library.

mod args;
mod commands;
mod common;
mod report;

use std::io::Write;
use std::process::ExitCode;

use adegree_core::poly::DEFAULT_BUDGET_BITS;
use adegree_core::Budget;
use clap::Parser;

use args::{CatalogAction, Cli, Command};
use common::{CliError, CliResult, Ctx};
use report::{emit, Defaults, Outcome};

const BUDGET_ENV: &str = "ADEGREE_BUDGET_BITS";

fn budget_bits(flag: Option<u64>) -> CliResult<u64> {
    let bits = match flag {
        Some(b) => b,
        None => match std::env::var(BUDGET_ENV) {
            Ok(s) => s
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("{BUDGET_ENV} must be a positive integer, got {s:?}")))?,
            Err(_) => DEFAULT_BUDGET_BITS,
        },
    };
    if bits == 0 {
        return Err(CliError::Usage("the coefficient budget must be positive".into()));
    }
    Ok(bits)
}

fn run(cli: &Cli) -> CliResult<Outcome> {
    let bits = budget_bits(cli.budget_bits)?;
    let ctx = Ctx {
        budget: Budget::new(bits),
        seed: cli.seed,
        parallel: cli.parallel,
        defaults: Defaults::new(bits, cli.seed),
    };
    match &cli.command {
        Command::Degseq { source, n } => commands::degseq(&ctx, source, *n),
        Command::Alpha {
            source,
            points,
            n,
            window,
            tol,
        } => commands::alpha(&ctx, source, points, *n, *window, *tol),
        Command::Hcanon { source, points, n, delta } => commands::hcanon(&ctx, source, points, *n, *delta),
        Command::Hcirc {
            source,
            points,
            period,
            n,
            delta,
            tol,
        } => commands::hcirc(&ctx, source, points, *period, *n, *delta, *tol),
        Command::Stable { source, max_steps } => commands::stable(&ctx, source, *max_steps),
        Command::Monomial { matrix, points, n, tol } => commands::monomial(&ctx, matrix, points, *n, *tol),
        Command::Certify {
            source,
            point,
            kind,
            prime,
            period,
            n,
        } => commands::certify_cmd(&ctx, source, point, kind, *prime, *period, *n),
        Command::Catalog { action } => match action {
            CatalogAction::List => commands::catalog_list_cmd(&ctx),
            CatalogAction::Verify { id, all, params, tol } => {
                commands::catalog_verify(&ctx, id.as_deref(), *all, params, *tol)
            }
        },
        Command::Report { samples, n, tol } => commands::report(&ctx, *samples, *n, *tol),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if let Err(e) = emit(&out, cli.format, &mut stdout).and_then(|_| stdout.flush()) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(out.doc.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
