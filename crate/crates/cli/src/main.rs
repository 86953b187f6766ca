//! `qlower`: build, lower, rescale, evaluate and verify quantized networks.
//!
//! JSON goes to stdout, errors go to stderr as `{"error": kind, "message": …}`.
//! Exit status: 0 success, 1 validation failure, 2 usage error, 3 I/O error.

mod commands;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "qlower", version, about = "Exact quantized-network lowering and indicator approximators")]
pub struct Cli {
    /// Pretty-printed JSON, or an aligned table for `report`.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a depth-2 indicator approximator for a built-in target.
    Approx(ApproxArgs),
    /// Lower a network to {0, ±1/2} or {±1/4} weights.
    Lower(LowerArgs),
    /// Move lowered weights to {0, ±1} or {±1} with a compensating output scale.
    Rescale(RescaleArgs),
    /// Evaluate a network or approximator at one point.
    Eval(EvalArgs),
    /// Compare two networks on seeded random points of the cube.
    Equiv(EquivArgs),
    /// Depth, width and sparsity bounds for the given approximation parameters.
    Bounds(BoundsArgs),
    /// Measure sup errors for several targets and tolerances and write a CSV.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
pub struct ApproxArgs {
    /// One of constant, mean, max, root.
    #[arg(long)]
    pub target: String,
    #[arg(long)]
    pub d: usize,
    /// Override the target's Hölder exponent (re-checked on seeded pairs).
    #[arg(long)]
    pub beta: Option<f64>,
    /// Override the target's Hölder constant.
    #[arg(long = "K")]
    pub k: Option<f64>,
    /// Override the target's sup bound.
    #[arg(long = "F")]
    pub f: Option<f64>,
    #[arg(long)]
    pub eps: f64,
    /// Use this grid resolution instead of the smallest certified one.
    #[arg(long = "M")]
    pub m: Option<usize>,
    /// Approximator file (network, or readout-only when too large to materialize).
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub cert: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum LowerMode {
    Ternary,
    Binary,
}

#[derive(Debug, Args)]
pub struct LowerArgs {
    #[arg(long, value_enum)]
    pub mode: LowerMode,
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub cert: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum RescaleTarget {
    Unit,
}

#[derive(Debug, Args)]
pub struct RescaleArgs {
    #[arg(long, value_enum)]
    pub to: RescaleTarget,
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Keep unit scale and switch to the scaled activation instead.
    #[arg(long)]
    pub scaled_activation: bool,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub net: PathBuf,
    /// Comma-separated coordinates: integers, decimals or `p/q`.
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    /// Rational arithmetic instead of f64.
    #[arg(long)]
    pub exact: bool,
    /// Evaluate an approximator by cell lookup instead of running its layers.
    #[arg(long)]
    pub implicit: bool,
}

#[derive(Debug, Args)]
pub struct EquivArgs {
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: PathBuf,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub exact: bool,
    /// Largest accepted difference; defaults to 0 with --exact and 1e-12 otherwise.
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub d: u32,
    #[arg(long)]
    pub beta: f64,
    #[arg(long = "K")]
    pub k: f64,
    #[arg(long = "N")]
    pub n: u64,
    #[arg(long)]
    pub m: u32,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Comma-separated built-in target names.
    #[arg(long, value_delimiter = ',', required = true)]
    pub targets: Vec<String>,
    #[arg(long = "eps-list", value_delimiter = ',', required = true)]
    pub eps_list: Vec<f64>,
    #[arg(long)]
    pub csv: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub d: usize,
    /// Grid points per axis for the sup estimate.
    #[arg(long, default_value_t = 201)]
    pub grid: usize,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(CliError::usage(e.render().to_string().trim_end())),
    };
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            match out.failure {
                Some(e) => fail(e),
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => fail(e),
    }
}

fn fail(e: CliError) -> ExitCode {
    eprintln!("{}", e.to_json());
    e.kind.exit_code()
}
