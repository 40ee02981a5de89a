//! The four quality dimensions of a causality matrix against an event
//! log. All functions are pure; evaluation of many models in parallel is
//! safe.

use serde::de::Deserializer;
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::causality::CausalityMatrix;
use crate::eventlog::{EventLog, FollowsStats};

/// The quality dimensions of one model. Serializes to JSON with six
/// decimal places per field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QualityVector {
    pub completeness: f64,
    pub generalization: f64,
    pub preciseness: f64,
    pub simplicity: f64,
}

impl QualityVector {
    /// The two objectives driving evolution; preciseness and simplicity
    /// are reported but not optimized.
    pub fn objectives(&self) -> (f64, f64) {
        (self.completeness, self.generalization)
    }
}

/// A float that serializes as a JSON number with exactly six decimal
/// places.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SixDecimals(pub f64);

impl Serialize for SixDecimals {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return Err(serde::ser::Error::custom("non-finite metric value"));
        }
        let raw = serde_json::value::RawValue::from_string(format!("{:.6}", self.0))
            .map_err(serde::ser::Error::custom)?;
        raw.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SixDecimals {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        f64::deserialize(deserializer).map(SixDecimals)
    }
}

impl Serialize for QualityVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("QualityVector", 4)?;
        s.serialize_field("completeness", &SixDecimals(self.completeness))?;
        s.serialize_field("generalization", &SixDecimals(self.generalization))?;
        s.serialize_field("preciseness", &SixDecimals(self.preciseness))?;
        s.serialize_field("simplicity", &SixDecimals(self.simplicity))?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for QualityVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            completeness: f64,
            generalization: f64,
            preciseness: f64,
            simplicity: f64,
        }
        let raw = Raw::deserialize(deserializer)?;
        Ok(QualityVector {
            completeness: raw.completeness,
            generalization: raw.generalization,
            preciseness: raw.preciseness,
            simplicity: raw.simplicity,
        })
    }
}

/// Token-replay bookkeeping behind the completeness value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReplayDiagnostics {
    pub parsed_tasks_ratio: f64,
    pub missing_tokens: u64,
    pub extra_tokens: u64,
    pub traces_with_missing: u64,
    pub traces_with_extra: u64,
    pub penalty: f64,
}

/// Replay fitness: the parsed-tasks ratio minus a penalty built from
/// missing and extra tokens.
///
/// Missing tokens are weighted by occurrence: every unparsed
/// directly-follows occurrence costs one token. Extra tokens combine a
/// structural term (a task into which every arc-emitting task points)
/// and a replay term summed over task triples (t1, t2, t3) and offsets
/// k in 2..max trace length, where t3 is reached k steps after t1 and
/// k-1 steps after t2 while the direct t1 -> t2 step is unmodeled.
/// Trace counts attribute an extra token to a trace when the triple
/// pattern occurs inside it at aligned positions; the structural term
/// has no trace to charge.
pub fn completeness(
    model: &CausalityMatrix,
    stats: &FollowsStats,
    log: &EventLog,
) -> (f64, ReplayDiagnostics) {
    let n = stats.n();
    debug_assert_eq!(model.n(), n);
    debug_assert_eq!(log.n(), n);
    let nf = n as f64;

    let mut parsed_arcs: u64 = 0;
    let mut missing: u64 = 0;
    for t1 in 0..n {
        for t2 in 0..n {
            if stats.follows(t1, t2) {
                if model.is_set(t1, t2) {
                    parsed_arcs += 1;
                } else {
                    missing += stats.follows_count(t1, t2);
                }
            }
        }
    }
    let parsed_tasks_ratio = parsed_arcs as f64 / nf;

    let mut traces_with_missing: u64 = 0;
    for v in stats.variants() {
        if v.pairs.iter().any(|&(a, b)| !model.is_set(a, b)) {
            traces_with_missing += v.count;
        }
    }

    // Structural extras: target tasks covered by every arc-emitting task.
    // With no arc-emitting tasks the product over an empty set is 1.
    let emitting: Vec<usize> = (0..n).filter(|&t1| model.row_degree(t1) >= 1).collect();
    let mut extra1: u64 = 0;
    for t2 in 0..n {
        if emitting.iter().all(|&t1| model.is_set(t1, t2)) {
            extra1 += 1;
        }
    }

    let lmax = stats.max_trace_len();
    let mut extra2: u64 = 0;
    for t1 in 0..n {
        for t2 in 0..n {
            if stats.follows(t1, t2) && !model.is_set(t1, t2) {
                for t3 in 0..n {
                    if model.is_set(t2, t3) && model.is_set(t1, t3) {
                        for k in 2..lmax {
                            if stats.kth_follows(t1, t3, k) && stats.kth_follows(t2, t3, k - 1) {
                                extra2 += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    let extra = extra1 + extra2;

    let mut traces_with_extra: u64 = 0;
    for v in stats.variants() {
        if variant_has_extra_pattern(&v.events, model) {
            traces_with_extra += v.count;
        }
    }

    let trace_count = stats.trace_count();
    let traces_without_missing = (trace_count - traces_with_missing + 1) as f64;
    let traces_without_extra = (trace_count - traces_with_extra + 1) as f64;
    let penalty =
        (missing as f64 / traces_without_missing + extra as f64 / traces_without_extra) / nf;
    let value = parsed_tasks_ratio - penalty;

    (
        value,
        ReplayDiagnostics {
            parsed_tasks_ratio,
            missing_tokens: missing,
            extra_tokens: extra,
            traces_with_missing,
            traces_with_extra,
            penalty,
        },
    )
}

/// Positions i, i+1, i+k instantiate the extra-token triple inside one
/// trace: the adjacent step is unmodeled while both tasks reach a common
/// successor k and k-1 steps ahead.
fn variant_has_extra_pattern(events: &[usize], model: &CausalityMatrix) -> bool {
    for i in 0..events.len().saturating_sub(1) {
        let (t1, t2) = (events[i], events[i + 1]);
        if !model.is_set(t1, t2) {
            for &t3 in &events[i + 2..] {
                if model.is_set(t2, t3) && model.is_set(t1, t3) {
                    return true;
                }
            }
        }
    }
    false
}

/// Penalizes models whose enabled arcs carry little observed traffic.
/// A task whose enabled arcs were never executed contributes the maximum
/// penalty term of 1, keeping the value finite.
pub fn generalization(model: &CausalityMatrix, stats: &FollowsStats) -> f64 {
    let n = stats.n();
    debug_assert_eq!(model.n(), n);
    let mut sum = 0.0;
    for t1 in 0..n {
        let mut freq: u64 = 0;
        for t2 in 0..n {
            if model.is_set(t1, t2) {
                freq += stats.follows_count(t1, t2);
            }
        }
        sum += if freq == 0 {
            1.0
        } else {
            1.0 / (freq as f64).sqrt()
        };
    }
    1.0 - sum / n as f64
}

/// Fraction of observed successor edges the model enables, visit-weighted.
/// Tasks with no observed successors contribute nothing; a log with no
/// successor edges at all scores 1.
pub fn preciseness(model: &CausalityMatrix, stats: &FollowsStats) -> f64 {
    let n = stats.n();
    debug_assert_eq!(model.n(), n);
    let mut visited = 0.0;
    let mut total = 0.0;
    for t1 in 0..n {
        let mut outgoing: u64 = 0;
        let mut used: u64 = 0;
        for t2 in 0..n {
            if stats.follows(t1, t2) {
                outgoing += 1;
                if model.is_set(t1, t2) {
                    used += 1;
                }
            }
        }
        if outgoing == 0 {
            continue;
        }
        let v = stats.visits(t1) as f64;
        visited += v * (outgoing - used) as f64 / outgoing as f64;
        total += v * outgoing as f64;
    }
    if total == 0.0 {
        1.0
    } else {
        1.0 - visited / total
    }
}

/// Inverse of the model's arc cardinality (row sums plus column sums,
/// i.e. twice the set bits); the empty model scores 1.
pub fn simplicity(model: &CausalityMatrix) -> f64 {
    let cardinality = 2 * model.count_ones();
    if cardinality == 0 {
        1.0
    } else {
        1.0 / cardinality as f64
    }
}

/// Bundles the four metrics for one model.
pub fn evaluate(model: &CausalityMatrix, stats: &FollowsStats, log: &EventLog) -> QualityVector {
    let (completeness, _) = completeness(model, stats, log);
    QualityVector {
        completeness,
        generalization: generalization(model, stats),
        preciseness: preciseness(model, stats),
        simplicity: simplicity(model),
    }
}
