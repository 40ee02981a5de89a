//! Multi-objective process model discovery from event logs.
//!
//! The engine evolves binary causality matrices with dichotomous
//! differential-evolution operators, optimizing completeness (replay
//! fitness) and generalization simultaneously, and returns the Pareto
//! front of candidate models. Preciseness and simplicity are reported
//! for every returned model, discovered models export to Graphviz DOT,
//! minimal PNML and a plain matrix CSV, and the crossover rates can be
//! tuned with an L16 design reduced by grey relational analysis.

pub mod causality;
pub mod error;
pub mod eventlog;
pub mod evolution;
pub mod metrics;
pub mod pareto;
pub mod tuning;

pub use causality::{CausalityMatrix, Individual};
pub use error::{Error, Result};
pub use eventlog::{build_stats, EventLog, FollowsStats, LogFormat, Trace};
pub use evolution::{weighted_sum, EvolutionConfig, MultiRunResult, ParetoEntry, RunResult};
pub use metrics::{evaluate, QualityVector, ReplayDiagnostics, SixDecimals};
