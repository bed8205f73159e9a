//! `qapvdss`: solve QAP instances, generate random ones, run
//! time-to-target experiments, and consolidate run reports.
//!
//! Exit codes: 0 success, 2 unreadable or invalid data, 3 inconsistent
//! configuration, 4 no target reached / nothing to report.

mod commands;
mod config;

use clap::{Args, Parser, Subcommand};

use crate::config::CliError;

#[derive(Parser)]
#[command(name = "qapvdss", version, about = "QAP solver toolkit: robust tabu search with variable-depth sequential search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and write the best solution found.
    Solve(SolveArgs),
    /// Generate a random symmetric instance with uniform entries.
    Generate(GenerateArgs),
    /// Measure time-to-target distributions for one or more solvers.
    Ttt(TttArgs),
    /// Merge run CSVs into a consolidated summary.
    Report(ReportArgs),
}

/// Options shared by the solver-running subcommands. Precedence:
/// command-line flags, then the config file, then built-in defaults.
#[derive(Args, Debug, Default)]
struct CommonArgs {
    /// JSON config file supplying defaults for the other flags.
    #[arg(long, global = true)]
    config: Option<std::path::PathBuf>,
    /// Master seed; drawn from the clock and recorded when omitted.
    #[arg(long)]
    seed: Option<u64>,
    /// Tabu search iterations (default: n^2).
    #[arg(long)]
    rts_iterations: Option<u64>,
    /// Chain search depth schedule, comma separated (default: 2,5).
    #[arg(long, value_delimiter = ',')]
    depths: Option<Vec<usize>>,
    /// Chain search move budget per start node (default: 100000).
    #[arg(long)]
    move_limit: Option<u64>,
    /// Worker threads (default: QAPVDSS_WORKERS or 1).
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Args, Debug)]
struct SolveArgs {
    /// Instance file in QAPLIB format.
    #[arg(long)]
    instance: std::path::PathBuf,
    /// Solver to run: rts, vdss, or hybrid.
    #[arg(long)]
    solver: Option<String>,
    /// Independent runs; the best result is kept.
    #[arg(long)]
    runs: Option<u64>,
    /// Solution file path (default: instance path with .sln extension).
    #[arg(long)]
    output: Option<std::path::PathBuf>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    /// Problem size (at least 2).
    #[arg(long)]
    n: usize,
    /// Largest matrix entry (default: 99).
    #[arg(long)]
    max_entry: Option<u32>,
    /// Instance file to write; a .meta.json sidecar lands next to it.
    #[arg(long)]
    output: std::path::PathBuf,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug)]
struct TttArgs {
    /// Instance file in QAPLIB format.
    #[arg(long)]
    instance: std::path::PathBuf,
    /// Solvers to measure (repeat or comma separate; default rts,hybrid).
    #[arg(long, value_delimiter = ',')]
    solver: Option<Vec<String>>,
    /// Time-to-target measurements per solver.
    #[arg(long)]
    runs: Option<u64>,
    /// Target cost; defaults to the published target for known instances.
    #[arg(long)]
    target: Option<i64>,
    /// Normalizer b for reporting the normalized target (tau - b) / b;
    /// defaults to the published improvement threshold when known.
    #[arg(long)]
    normalizer: Option<i64>,
    /// Restart attempts per measurement before censoring (default: 1000).
    #[arg(long)]
    max_attempts: Option<u64>,
    /// Output path prefix (default: instance path without extension).
    #[arg(long)]
    output: Option<std::path::PathBuf>,
    /// Stdout payload: json (summary), csv (runs), or plot (series).
    #[arg(long)]
    format: Option<String>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug)]
struct ReportArgs {
    /// Run CSVs to merge (repeatable).
    #[arg(long, required = true)]
    input: Vec<std::path::PathBuf>,
    /// Normalizer override for the normalized-target column.
    #[arg(long)]
    normalizer: Option<i64>,
    /// Report file; stdout when omitted.
    #[arg(long)]
    output: Option<std::path::PathBuf>,
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(args) => commands::solve(args),
        Command::Generate(args) => commands::generate(args),
        Command::Ttt(args) => commands::ttt(args),
        Command::Report(args) => commands::report(args),
    };
    if let Err(err) = result {
        eprintln!("error: {}", err.message);
        std::process::exit(err.exit_code());
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError { kind: config::ErrorKind::Data, .. } => 2,
            CliError { kind: config::ErrorKind::Config, .. } => 3,
            CliError { kind: config::ErrorKind::Unreached, .. } => 4,
        }
    }
}
