//! `qaoa-reach`: generate random k-SAT instances, optimize QAOA angles on
//! them, and run the density / depth / Grover experiments.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qaoa_reach::DriverKind;

#[derive(Debug, Parser)]
#[command(name = "qaoa-reach", version, about)]
struct Cli {
    /// Worker threads (defaults to all cores). Results do not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a random k-SAT instance in DIMACS CNF.
    Gen(GenArgs),
    /// Optimize QAOA angles for one DIMACS instance.
    Solve(SolveArgs),
    /// Optimality deficit vs clause density at fixed depths.
    Sweep(SweepArgs),
    /// Critical depth (ensemble overlap >= threshold) vs clause density.
    Pstar(PstarArgs),
    /// Critical depth of the variational Grover search vs register size.
    Grover(GroverArgs),
    /// Draw SVG figures from a sweep CSV.
    Render(RenderArgs),
}

#[derive(Debug, Args)]
struct GenArgs {
    /// Number of variables.
    #[arg(long)]
    n: usize,
    /// Number of clauses.
    #[arg(long, conflicts_with = "alpha", required_unless_present = "alpha")]
    m: Option<usize>,
    /// Clause density; uses m = round(alpha * n).
    #[arg(long)]
    alpha: Option<f64>,
    /// Literals per clause (2 or 3).
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Output file (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Never repeat a clause within the instance.
    #[arg(long)]
    unique_clauses: bool,
}

#[derive(Debug, Args)]
struct SolveArgs {
    /// DIMACS CNF file.
    #[arg(long)]
    cnf: PathBuf,
    /// Circuit depth.
    #[arg(long, default_value_t = 1)]
    p: usize,
    /// Mixer: `x` (transverse field) or `plus` (projector onto |+...+>).
    #[arg(long, default_value = "x")]
    driver: DriverKind,
    #[arg(long, default_value_t = 20)]
    restarts: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Print a JSON report instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct EnsembleArgs {
    /// Number of variables.
    #[arg(long, default_value_t = 6)]
    n: usize,
    /// Literals per clause (2 or 3).
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// Mixer: `x` or `plus`.
    #[arg(long, default_value = "x")]
    driver: DriverKind,
    /// Densities as `start:stop:step` (inclusive) or a comma list.
    #[arg(long, default_value = "0.25:5:0.25")]
    alphas: String,
    /// Instances per density.
    #[arg(long, default_value_t = 100)]
    instances: usize,
    /// Seeds both instance generation and optimizer restarts.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Optimizer restarts per instance and depth.
    #[arg(long, default_value_t = 20)]
    restarts: usize,
    /// Never repeat a clause within an instance.
    #[arg(long)]
    unique_clauses: bool,
    #[arg(long, default_value = "out")]
    out_dir: PathBuf,
    /// Skip SVG output.
    #[arg(long)]
    no_figures: bool,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    ensemble: EnsembleArgs,
    /// Comma-separated depths.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    depths: Vec<usize>,
}

#[derive(Debug, Args)]
struct PstarArgs {
    #[command(flatten)]
    ensemble: EnsembleArgs,
    /// Ensemble-mean ground-state overlap that defines p*.
    #[arg(long, default_value_t = 0.95)]
    eta: f64,
    /// Largest depth tried.
    #[arg(long, default_value_t = 30)]
    p_max: usize,
}

#[derive(Debug, Args)]
struct GroverArgs {
    /// Comma-separated register sizes.
    #[arg(long, value_delimiter = ',', default_value = "6,8,10")]
    n: Vec<usize>,
    /// Energy threshold that defines p*.
    #[arg(long, default_value_t = 1e-4)]
    tol: f64,
    #[arg(long, default_value_t = 60)]
    p_max: usize,
    #[arg(long, default_value_t = 20)]
    restarts: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value = "out")]
    out_dir: PathBuf,
    #[arg(long)]
    no_figures: bool,
}

#[derive(Debug, Args)]
struct RenderArgs {
    /// Sweep CSV file(s).
    #[arg(long = "in", required = true, num_args = 1..)]
    input: Vec<PathBuf>,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let result = match cli.command {
        Command::Gen(args) => commands::gen(args),
        Command::Solve(args) => commands::solve(args),
        Command::Sweep(args) => commands::sweep(args),
        Command::Pstar(args) => commands::pstar(args),
        Command::Grover(args) => commands::grover(args),
        Command::Render(args) => commands::render(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &qaoa_reach::Error) -> u8 {
    use qaoa_reach::Error;
    match e {
        Error::ResourceLimit { .. } => 3,
        Error::InvalidArguments(_) | Error::Parse { .. } => 2,
        Error::Io(_) | Error::Json(_) => 1,
    }
}
