//! `besselid`: exact identity verification, numeric checks, sampling
//! experiments and inequality scans.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 configuration error.

mod commands;
mod grid;
mod report;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::CliError;
use crate::report::{Format, Row};

/// Worker count for grid commands; unset means 1.
pub const WORKERS_ENV: &str = "BESSELID_WORKERS";

#[derive(Debug, Parser)]
#[command(
    name = "besselid",
    version,
    about = "Bessel polynomial identities and GIG checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Verify a polynomial identity exactly over an (m, n) grid.
    Verify(VerifyArgs),
    /// Floating-point residuals of the Macdonald-function identities.
    Numeric(NumericArgs),
    /// Seeded Monte Carlo checks of the GIG convolution results.
    Sample(SampleArgs),
    /// Turan-type and log-convexity scans of K_nu(z).
    Inequality(InequalityArgs),
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write rows here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    General,
    Convolution,
    Theta,
    F,
    Laguerre,
    Prudnikov,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Number of variables: `a..b`, a value or a list. Not used by prudnikov.
    #[arg(long)]
    m: Option<String>,
    /// Degree: `a..b`, a value or a list.
    #[arg(long)]
    n: String,
    /// Largest m accepted without complaint.
    #[arg(long, default_value_t = 5)]
    max_m: u32,
    /// Largest n accepted without complaint.
    #[arg(long, default_value_t = 12)]
    max_n: u32,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NumericIdentity {
    Brychkov,
    K,
    Fk,
}

#[derive(Debug, Args)]
struct NumericArgs {
    #[arg(long, value_enum)]
    identity: NumericIdentity,
    /// Required except for fk, where it defaults to the number of z values.
    #[arg(long)]
    m: Option<String>,
    #[arg(long)]
    n: String,
    /// Arguments; for fk the z_i (or one value repeated m times).
    #[arg(long, allow_hyphen_values = true)]
    z: String,
    /// Largest accepted relative residual.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SampleTest {
    Stability,
    Lemma2,
    Extension,
    Moments,
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[arg(long, value_enum)]
    test: SampleTest,
    /// z values; two for stability and lemma2, a grid for moments.
    #[arg(long, allow_hyphen_values = true)]
    z: String,
    /// Moment orders (moments only).
    #[arg(long)]
    n: Option<String>,
    #[arg(long, default_value_t = 100_000)]
    count: usize,
    /// Random if omitted; the chosen seed is printed to stderr.
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct InequalityArgs {
    #[arg(
        long,
        conflicts_with = "logconvex",
        required_unless_present = "logconvex"
    )]
    turan: bool,
    #[arg(long)]
    logconvex: bool,
    #[arg(long, allow_hyphen_values = true, required_if_eq("turan", "true"))]
    x: Option<String>,
    #[arg(long, allow_hyphen_values = true, required_if_eq("turan", "true"))]
    y: Option<String>,
    #[arg(long, allow_hyphen_values = true, required_if_eq("turan", "true"))]
    p: Option<String>,
    /// Orders for the log-convexity scan, usually `a:b:step`.
    #[arg(long, allow_hyphen_values = true, required_if_eq("logconvex", "true"))]
    nu: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    z: String,
    #[command(flatten)]
    output: OutputArgs,
}

fn workers() -> Result<usize, CliError> {
    match std::env::var(WORKERS_ENV) {
        Err(_) => Ok(1),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(CliError::Config(format!(
                "{WORKERS_ENV} must be a positive integer, got {v:?}"
            ))),
        },
    }
}

fn emit(rows: &[Row], output: &OutputArgs) -> Result<(), CliError> {
    let io_err = |e: io::Error| CliError::Config(format!("cannot write report: {e}"));
    match &output.out {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| CliError::Config(format!("cannot create {}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            report::write_rows(&mut w, rows, output.format).map_err(io_err)?;
            w.flush().map_err(io_err)
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            report::write_rows(&mut lock, rows, output.format).map_err(io_err)
        }
    }
}

fn summarize(label: &str, rows: &[Row]) {
    let failed: Vec<&Row> = rows.iter().filter(|r| !r.passed()).collect();
    eprintln!(
        "{label}: {} checks, {} passed, {} failed",
        rows.len(),
        rows.len() - failed.len(),
        failed.len()
    );
    for r in failed.iter().take(5) {
        let params = serde_json::Value::Object(r.params.clone());
        eprintln!("  failed {} {params}", r.identity);
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers()?)
        .build()
        .map_err(|e| CliError::Config(format!("cannot start worker pool: {e}")))?;
    let (label, rows, output) = match cli.command {
        Command::Verify(a) => {
            let grid = commands::VerifyGrid::new(a.family, a.m.as_deref(), &a.n, a.max_m, a.max_n)?;
            let rows = pool.install(|| grid.run())?;
            ("verify", rows, a.output)
        }
        Command::Numeric(a) => {
            let grid = commands::NumericGrid::new(a.identity, a.m.as_deref(), &a.n, &a.z, a.tol)?;
            let rows = pool.install(|| grid.run())?;
            ("numeric", rows, a.output)
        }
        Command::Sample(a) => {
            let seed = a.seed.unwrap_or_else(rand::random);
            eprintln!("seed: {seed}");
            let grid = commands::SampleGrid::new(a.test, &a.z, a.n.as_deref(), a.count, seed)?;
            let rows = pool.install(|| grid.run())?;
            if rows.iter().any(|r| !r.passed()) {
                eprintln!("reproduce with --seed {seed}");
            }
            ("sample", rows, a.output)
        }
        Command::Inequality(a) => {
            let grid = if a.turan {
                commands::InequalityGrid::turan(
                    a.x.as_deref().unwrap_or_default(),
                    a.y.as_deref().unwrap_or_default(),
                    a.p.as_deref().unwrap_or_default(),
                    &a.z,
                )?
            } else {
                commands::InequalityGrid::logconvex(a.nu.as_deref().unwrap_or_default(), &a.z)?
            };
            let rows = pool.install(|| grid.run())?;
            ("inequality", rows, a.output)
        }
    };
    emit(&rows, &output)?;
    summarize(label, &rows);
    Ok(rows.iter().all(Row::passed))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
