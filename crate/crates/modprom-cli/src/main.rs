mod commands;
mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use modprom::LogFormat;

#[derive(Parser)]
#[command(
    name = "modprom",
    version,
    about = "Multi-objective process model discovery from event logs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Evolve a Pareto front of process models from an event log
    Discover(DiscoverArgs),
    /// Score a model (matrix CSV) against an event log
    Evaluate(EvaluateArgs),
    /// Tune the crossover rates with an L16 design and grey relational
    /// analysis
    Tune(TuneArgs),
    /// Dump follows counts, dependency measures and visit counts as CSV
    Stats(StatsArgs),
    /// Rank result JSON files by their weighted quality sum
    Rank(RankArgs),
}

#[derive(Args)]
pub struct DiscoverArgs {
    /// Event log path
    #[arg(long)]
    pub log: PathBuf,
    /// Input format: traces, csv or xes (inferred from the extension
    /// when omitted)
    #[arg(long)]
    pub format: Option<LogFormat>,
    /// Output directory
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Independent seeded runs; the union front is reported
    #[arg(long, default_value_t = 1)]
    pub runs: usize,
    /// Population size
    #[arg(long, default_value_t = 100)]
    pub pop: usize,
    /// Crossover rate where the donors agree
    #[arg(long, default_value_t = 0.2)]
    pub cr1: f64,
    /// Crossover rate where the donors differ
    #[arg(long, default_value_t = 0.5)]
    pub cr2: f64,
    #[arg(long = "max-iters", default_value_t = 100)]
    pub max_iters: usize,
    /// Stop after this many iterations without improvement
    #[arg(long, default_value_t = 10)]
    pub stall: usize,
}

#[derive(Args)]
pub struct EvaluateArgs {
    #[arg(long)]
    pub log: PathBuf,
    #[arg(long)]
    pub format: Option<LogFormat>,
    /// Causality matrix CSV to score
    #[arg(long)]
    pub model: PathBuf,
    /// Also write the report JSON here
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct TuneArgs {
    /// Event log to tune on (engine mode)
    #[arg(long, required_unless_present = "responses")]
    pub log: Option<PathBuf>,
    #[arg(long)]
    pub format: Option<LogFormat>,
    /// Recorded responses CSV (offline mode, engine bypassed)
    #[arg(long, conflicts_with = "log")]
    pub responses: Option<PathBuf>,
    /// Four comma-separated CR1 levels
    #[arg(long = "levels-cr1")]
    pub levels_cr1: Option<String>,
    /// Four comma-separated CR2 levels
    #[arg(long = "levels-cr2")]
    pub levels_cr2: Option<String>,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub pop: usize,
    #[arg(long = "max-iters", default_value_t = 100)]
    pub max_iters: usize,
    #[arg(long, default_value_t = 10)]
    pub stall: usize,
    /// Seeded repeats averaged per design cell
    #[arg(long, default_value_t = 3)]
    pub repeats: usize,
}

#[derive(Args)]
pub struct StatsArgs {
    #[arg(long)]
    pub log: PathBuf,
    #[arg(long)]
    pub format: Option<LogFormat>,
    /// Also write the three CSV files here
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct RankArgs {
    /// Result JSON files: quadruple objects or arrays of them
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
}

fn main() {
    env_logger::init();

    if let Ok(threads) = std::env::var("MODPROM_THREADS") {
        match threads.parse::<usize>() {
            Ok(k) if k >= 1 => {
                if let Err(e) = rayon::ThreadPoolBuilder::new()
                    .num_threads(k)
                    .build_global()
                {
                    log::warn!("could not apply MODPROM_THREADS={k}: {e}");
                }
            }
            _ => log::warn!("ignoring invalid MODPROM_THREADS={threads:?}"),
        }
    }

    let cli = Cli::parse();
    if let Err(failure) = commands::dispatch(&cli) {
        eprintln!("error: {}", failure.message);
        std::process::exit(failure.code);
    }
}
