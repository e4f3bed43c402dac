use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod failure;
mod model_args;
mod output;

use failure::Failure;
use model_args::ModelArgs;

/// Exact busy-period distribution of the transitory Δ(i)/M/1 queue.
///
/// Exit codes: 0 success, 1 cross-method mismatch, 2 bad input, 3 size cap exceeded.
#[derive(Debug, Parser)]
#[command(name = "busyq", version)]
struct Cli {
    /// Worker threads for parallel routes (default: all cores).
    #[arg(long, global = true, env = "BUSYQ_WORKERS")]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Busy-period distribution (s_1, …, s_N) by one or all routes.
    Dist(DistArgs),
    /// Run every route, print a per-entry diff table, fail on any mismatch.
    Validate(ValidateArgs),
    /// List Dyck paths or feasible allocations of a given order.
    Paths(PathsArgs),
    /// Monte Carlo estimate of the busy-period distribution.
    Simulate(SimulateArgs),
    /// Print the triangular matrix A and its inverse as exact rationals.
    Inverse(InverseArgs),
    /// Joint law of all busy-period sizes.
    ///
    /// With an explicit rate sequence, the residual model after k customers
    /// are served uses the last N − k rates, re-indexed from 1.
    Joint(JointArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Recursion,
    Binomial,
    Matrix,
    Explicit,
    Oracle,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DistArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_enum, default_value = "recursion")]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: Mode,
    /// Largest N accepted by the brute-force oracle.
    #[arg(long, default_value_t = busyq_core::oracle::DEFAULT_CAP)]
    pub cap: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Validate this many random strictly decreasing rate sequences of length --n.
    #[arg(long)]
    pub random_trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = busyq_core::oracle::DEFAULT_CAP)]
    pub cap: usize,
    /// Perturb one route's output (harness self-test).
    #[arg(long, hide = true, value_enum)]
    pub corrupt: Option<MethodArg>,
}

#[derive(Debug, Args)]
pub struct PathsArgs {
    #[arg(long)]
    pub order: usize,
    #[arg(long)]
    pub feasible_only: bool,
    /// Largest order that will be listed.
    #[arg(long, default_value_t = busyq_core::oracle::ENUMERATION_CAP)]
    pub cap: usize,
    /// Model for the weight column; N defaults to --order.
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = 100_000)]
    pub reps: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also tally the full sequence of busy-period sizes.
    #[arg(long)]
    pub joint: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct InverseArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct JointArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Compositions with more busy periods are pooled into a remainder.
    #[arg(long, default_value_t = usize::MAX)]
    pub max_periods: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

fn emit(text: &str, path: Option<&PathBuf>) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::BadInput(format!("{}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::BadInput(format!("stdout: {e}")))
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let (text, path) = match cli.command {
        Command::Dist(a) => (commands::dist(&a)?, a.out.output),
        Command::Validate(a) => (commands::validate(&a)?, None),
        Command::Paths(a) => (commands::paths(&a)?, a.output),
        Command::Simulate(a) => (commands::simulate(&a)?, a.out.output),
        Command::Inverse(a) => (commands::inverse(&a)?, a.output),
        Command::Joint(a) => (commands::joint(&a)?, a.out.output),
    };
    emit(&text, path.as_ref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match cli.workers {
        Some(w) => rayon::ThreadPoolBuilder::new().num_threads(w).build(),
        None => rayon::ThreadPoolBuilder::new().build(),
    };
    let pool = match pool {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}
