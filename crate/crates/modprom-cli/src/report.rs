//! Serializable report shapes written by the subcommands. Metric floats
//! carry six decimal places so repeated runs produce byte-identical
//! files.

use modprom::metrics::ReplayDiagnostics;
use modprom::{MultiRunResult, QualityVector, SixDecimals};
use serde::Serialize;

#[derive(Serialize)]
pub struct DiscoverConfigEcho {
    pub log: String,
    pub format: String,
    pub population_size: usize,
    pub cr1: f64,
    pub cr2: f64,
    pub max_iterations: usize,
    pub stall_iterations: usize,
    pub seed: u64,
    pub runs: usize,
}

#[derive(Serialize)]
pub struct FrontEntry {
    pub metrics: QualityVector,
    pub weighted_sum: SixDecimals,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix_file: Option<String>,
}

#[derive(Serialize)]
pub struct RunSection {
    pub seed: u64,
    pub iterations_used: usize,
    pub front: Vec<FrontEntry>,
}

#[derive(Serialize)]
pub struct ParetoReport {
    pub config: DiscoverConfigEcho,
    pub runs: Vec<RunSection>,
    pub union_front: Vec<FrontEntry>,
}

impl ParetoReport {
    pub fn new(config: DiscoverConfigEcho, result: &MultiRunResult) -> ParetoReport {
        // model files are written for union-front members; per-run
        // entries point at the same file when their model is one of them
        let file_of: std::collections::HashMap<&[u8], String> = result
            .union_front
            .iter()
            .enumerate()
            .map(|(k, e)| (e.model.bits(), format!("models/model_{k}.csv")))
            .collect();
        let entry = |e: &modprom::ParetoEntry| FrontEntry {
            metrics: e.quality,
            weighted_sum: SixDecimals(modprom::weighted_sum(&e.quality)),
            matrix_file: file_of.get(e.model.bits()).cloned(),
        };
        let runs = result
            .runs
            .iter()
            .map(|r| RunSection {
                seed: r.seed,
                iterations_used: r.iterations_used,
                front: r.pareto.iter().map(entry).collect(),
            })
            .collect();
        let union_front = result.union_front.iter().map(entry).collect();
        ParetoReport {
            config,
            runs,
            union_front,
        }
    }
}

#[derive(Serialize)]
pub struct DiagnosticsReport {
    pub parsed_tasks_ratio: SixDecimals,
    pub missing_tokens: u64,
    pub extra_tokens: u64,
    pub traces_with_missing: u64,
    pub traces_with_extra: u64,
    pub penalty: SixDecimals,
}

impl From<ReplayDiagnostics> for DiagnosticsReport {
    fn from(d: ReplayDiagnostics) -> DiagnosticsReport {
        DiagnosticsReport {
            parsed_tasks_ratio: SixDecimals(d.parsed_tasks_ratio),
            missing_tokens: d.missing_tokens,
            extra_tokens: d.extra_tokens,
            traces_with_missing: d.traces_with_missing,
            traces_with_extra: d.traces_with_extra,
            penalty: SixDecimals(d.penalty),
        }
    }
}

/// The quality vector fields at top level, plus the weighted sum and
/// replay diagnostics.
pub struct EvaluateReport {
    pub metrics: QualityVector,
    pub weighted_sum: f64,
    pub diagnostics: DiagnosticsReport,
}

impl Serialize for EvaluateReport {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("EvaluateReport", 6)?;
        s.serialize_field("completeness", &SixDecimals(self.metrics.completeness))?;
        s.serialize_field("generalization", &SixDecimals(self.metrics.generalization))?;
        s.serialize_field("preciseness", &SixDecimals(self.metrics.preciseness))?;
        s.serialize_field("simplicity", &SixDecimals(self.metrics.simplicity))?;
        s.serialize_field("weighted_sum", &SixDecimals(self.weighted_sum))?;
        s.serialize_field("diagnostics", &self.diagnostics)?;
        s.end()
    }
}
