//! Event-log ingestion and the log statistics consumed by the quality metrics.
//!
//! Three input formats are supported: plain trace text (one
//! whitespace-separated task sequence per line), CSV with `case`,
//! `activity` and `timestamp` columns, and a minimal XES subset
//! (`<trace>`/`<event>` elements, activity taken from the string
//! attribute keyed `concept:name`).

use std::collections::HashMap;
use std::io::Read;

use chrono::NaiveDateTime;
use quick_xml::events::Event as XmlEvent;

use crate::error::{Error, Result};

/// One process instance: an ordered sequence of task indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub case_id: String,
    pub events: Vec<usize>,
}

/// An event log normalized to indexed traces plus the task dictionary
/// (first-appearance order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventLog {
    tasks: Vec<String>,
    traces: Vec<Trace>,
    event_count: usize,
}

impl EventLog {
    /// Builds a log from `(case_id, task names)` pairs, interning task
    /// names in first-appearance order. Traces with zero events are
    /// rejected by the callers, not here.
    fn from_named_traces(named: Vec<(String, Vec<String>)>) -> Result<EventLog> {
        if named.is_empty() {
            return Err(Error::EmptyLog);
        }
        let mut tasks: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut traces = Vec::with_capacity(named.len());
        let mut event_count = 0;
        for (case_id, names) in named {
            debug_assert!(!names.is_empty());
            let events = names
                .into_iter()
                .map(|name| {
                    *index.entry(name.clone()).or_insert_with(|| {
                        tasks.push(name);
                        tasks.len() - 1
                    })
                })
                .collect::<Vec<_>>();
            event_count += events.len();
            traces.push(Trace { case_id, events });
        }
        Ok(EventLog {
            tasks,
            traces,
            event_count,
        })
    }

    /// Number of distinct tasks.
    pub fn n(&self) -> usize {
        self.tasks.len()
    }

    pub fn trace_count(&self) -> usize {
        self.traces.len()
    }

    pub fn event_count(&self) -> usize {
        self.event_count
    }

    /// Task dictionary in first-appearance order.
    pub fn tasks(&self) -> &[String] {
        &self.tasks
    }

    pub fn task_index(&self, name: &str) -> Option<usize> {
        self.tasks.iter().position(|t| t == name)
    }

    pub fn traces(&self) -> &[Trace] {
        &self.traces
    }

    /// True iff in some trace `t2` occurs exactly `k` positions after an
    /// occurrence of `t1`. Scans the raw traces; `FollowsStats` keeps a
    /// precomputed equivalent for the replay hot path.
    pub fn follows_k(&self, t1: usize, t2: usize, k: usize) -> bool {
        debug_assert!(k >= 1);
        self.traces.iter().any(|trace| {
            let ev = &trace.events;
            ev.len() > k && (0..ev.len() - k).any(|i| ev[i] == t1 && ev[i + k] == t2)
        })
    }

    /// Parses the plain trace text format: one trace per non-empty line,
    /// tasks separated by whitespace. Case ids are 1-based line numbers.
    pub fn parse_traces(input: &[u8]) -> Result<EventLog> {
        let text = String::from_utf8_lossy(input);
        let mut named = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let tokens: Vec<String> = line.split_whitespace().map(str::to_owned).collect();
            if tokens.is_empty() {
                continue; // blank lines are skipped, not an error
            }
            named.push(((lineno + 1).to_string(), tokens));
        }
        EventLog::from_named_traces(named)
    }

    /// Parses CSV with `case`, `activity`, `timestamp` columns
    /// (case-insensitive header match, extra columns ignored). Rows are
    /// grouped by case id in first-appearance order; within a case they
    /// are stably sorted by timestamp, so ties keep file order.
    ///
    /// Timestamps are compared chronologically when every row parses as
    /// an ISO-8601 date/datetime, otherwise as raw strings. The choice is
    /// per file, which keeps the sort key a total order.
    pub fn parse_csv(input: &[u8]) -> Result<EventLog> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_reader(input);
        let headers = reader
            .headers()
            .map_err(|e| Error::BadHeader(e.to_string()))?
            .clone();
        let find = |name: &str| {
            headers
                .iter()
                .position(|h| h.trim().eq_ignore_ascii_case(name))
        };
        let (case_col, act_col, ts_col) = match (find("case"), find("activity"), find("timestamp"))
        {
            (Some(c), Some(a), Some(t)) => (c, a, t),
            _ => {
                return Err(Error::BadHeader(
                    "need case, activity and timestamp columns".into(),
                ))
            }
        };

        struct Row {
            case: String,
            activity: String,
            timestamp: String,
        }
        let mut rows = Vec::new();
        for (i, record) in reader.records().enumerate() {
            let rowno = i + 1;
            let record = record.map_err(|_| Error::BadRow(rowno))?;
            let field = |col: usize| record.get(col).map(str::trim).unwrap_or("");
            let (case, activity, timestamp) = (field(case_col), field(act_col), field(ts_col));
            if case.is_empty() || activity.is_empty() || timestamp.is_empty() {
                return Err(Error::BadRow(rowno));
            }
            rows.push(Row {
                case: case.to_owned(),
                activity: activity.to_owned(),
                timestamp: timestamp.to_owned(),
            });
        }

        let all_iso = rows
            .iter()
            .all(|r| parse_iso_timestamp(&r.timestamp).is_some());

        let mut case_order: Vec<String> = Vec::new();
        let mut by_case: HashMap<String, Vec<usize>> = HashMap::new();
        for (i, row) in rows.iter().enumerate() {
            by_case.entry(row.case.clone()).or_insert_with(|| {
                case_order.push(row.case.clone());
                Vec::new()
            });
            by_case.get_mut(&row.case).unwrap().push(i);
        }

        let mut named = Vec::new();
        for case in case_order {
            let mut idx = by_case.remove(&case).unwrap();
            if all_iso {
                idx.sort_by_key(|&i| parse_iso_timestamp(&rows[i].timestamp).unwrap());
            } else {
                idx.sort_by(|&a, &b| rows[a].timestamp.cmp(&rows[b].timestamp));
            }
            let activities = idx.iter().map(|&i| rows[i].activity.clone()).collect();
            named.push((case, activities));
        }
        EventLog::from_named_traces(named)
    }

    /// Parses the minimal XES subset: `<trace>` elements containing
    /// `<event>` elements; the activity is the `<string>` attribute with
    /// key `concept:name`. Events lacking that attribute are skipped with
    /// a warning; traces left with zero events are dropped. The trace-level
    /// `concept:name`, when present, becomes the case id.
    pub fn parse_xes_minimal(input: &[u8]) -> Result<EventLog> {
        let mut reader = quick_xml::Reader::from_reader(input);
        let mut buf = Vec::new();
        let mut named: Vec<(String, Vec<String>)> = Vec::new();

        let mut in_trace = false;
        let mut in_event = false;
        let mut trace_ordinal = 0usize;
        let mut case_id: Option<String> = None;
        let mut activity: Option<String> = None;
        let mut events: Vec<String> = Vec::new();

        loop {
            let ev = reader
                .read_event_into(&mut buf)
                .map_err(|e| Error::XesParse(e.to_string()))?;
            match ev {
                XmlEvent::Start(ref e) | XmlEvent::Empty(ref e) => {
                    let empty = matches!(ev, XmlEvent::Empty(_));
                    match e.local_name().as_ref() {
                        b"trace" => {
                            trace_ordinal += 1;
                            if !empty {
                                in_trace = true;
                                case_id = None;
                                events.clear();
                            }
                        }
                        b"event" if in_trace => {
                            if empty {
                                log::warn!("xes: event without concept:name skipped");
                            } else {
                                in_event = true;
                                activity = None;
                            }
                        }
                        b"string" => {
                            let mut key = None;
                            let mut value = None;
                            for attr in e.attributes().with_checks(false).flatten() {
                                let v = attr
                                    .unescape_value()
                                    .map_err(|e| Error::XesParse(e.to_string()))?
                                    .into_owned();
                                match attr.key.local_name().as_ref() {
                                    b"key" => key = Some(v),
                                    b"value" => value = Some(v),
                                    _ => {}
                                }
                            }
                            if key.as_deref() == Some("concept:name") {
                                if in_event {
                                    activity = value;
                                } else if in_trace {
                                    case_id = value;
                                }
                            }
                        }
                        _ => {}
                    }
                }
                XmlEvent::End(ref e) => match e.local_name().as_ref() {
                    b"event" if in_event => {
                        in_event = false;
                        match activity.take() {
                            Some(a) => events.push(a),
                            None => log::warn!("xes: event without concept:name skipped"),
                        }
                    }
                    b"trace" if in_trace => {
                        in_trace = false;
                        if events.is_empty() {
                            log::warn!("xes: trace {} has no events, skipped", trace_ordinal);
                        } else {
                            let id = case_id.take().unwrap_or_else(|| trace_ordinal.to_string());
                            named.push((id, std::mem::take(&mut events)));
                        }
                    }
                    _ => {}
                },
                XmlEvent::Eof => break,
                _ => {}
            }
            buf.clear();
        }
        EventLog::from_named_traces(named)
    }

    /// Reads a log in the given format from any reader.
    pub fn read(mut input: impl Read, format: LogFormat) -> Result<EventLog> {
        let mut bytes = Vec::new();
        input.read_to_end(&mut bytes)?;
        match format {
            LogFormat::Traces => EventLog::parse_traces(&bytes),
            LogFormat::Csv => EventLog::parse_csv(&bytes),
            LogFormat::Xes => EventLog::parse_xes_minimal(&bytes),
        }
    }
}

/// Supported ingestion formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogFormat {
    Traces,
    Csv,
    Xes,
}

impl LogFormat {
    /// Picks a format from a file extension, defaulting to trace text.
    pub fn from_extension(path: &std::path::Path) -> LogFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("xes") => LogFormat::Xes,
            Some(ext) if ext.eq_ignore_ascii_case("csv") => LogFormat::Csv,
            _ => LogFormat::Traces,
        }
    }
}

impl std::str::FromStr for LogFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<LogFormat> {
        match s {
            "traces" => Ok(LogFormat::Traces),
            "csv" => Ok(LogFormat::Csv),
            "xes" => Ok(LogFormat::Xes),
            other => Err(Error::InvalidConfig(format!("unknown format {other:?}"))),
        }
    }
}

fn parse_iso_timestamp(s: &str) -> Option<NaiveDateTime> {
    if let Ok(dt) = chrono::DateTime::parse_from_rfc3339(s) {
        return Some(dt.naive_utc());
    }
    for fmt in ["%Y-%m-%dT%H:%M:%S%.f", "%Y-%m-%d %H:%M:%S%.f"] {
        if let Ok(dt) = NaiveDateTime::parse_from_str(s, fmt) {
            return Some(dt);
        }
    }
    chrono::NaiveDate::parse_from_str(s, "%Y-%m-%d")
        .ok()
        .and_then(|d| d.and_hms_opt(0, 0, 0))
}

/// A distinct trace shape: the event sequence, how many traces share it,
/// and its distinct adjacent pairs. Replay penalties only depend on these.
#[derive(Debug, Clone)]
pub(crate) struct Variant {
    pub events: Vec<usize>,
    pub count: u64,
    pub pairs: Vec<(usize, usize)>,
}

/// Precomputed statistics of an event log: directly-follows counts, the
/// 0/1 follows relation, per-task visit counts, the dependency measure
/// matrix used to seed the population, and k-th-follows tables for token
/// replay.
#[derive(Debug, Clone)]
pub struct FollowsStats {
    n: usize,
    trace_count: u64,
    follows_count: Vec<u64>,
    follows_bool: Vec<u8>,
    visits: Vec<u64>,
    dependency: Vec<f64>,
    /// kth[k-1] is the n*n 0/1 table for "t2 occurs exactly k after t1".
    kth: Vec<Vec<u8>>,
    max_trace_len: usize,
    variants: Vec<Variant>,
}

impl FollowsStats {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn trace_count(&self) -> u64 {
        self.trace_count
    }

    #[inline]
    pub fn follows_count(&self, t1: usize, t2: usize) -> u64 {
        self.follows_count[t1 * self.n + t2]
    }

    /// The 0/1 directly-follows relation (`follows_count > 0`).
    #[inline]
    pub fn follows(&self, t1: usize, t2: usize) -> bool {
        self.follows_bool[t1 * self.n + t2] != 0
    }

    #[inline]
    pub fn visits(&self, t: usize) -> u64 {
        self.visits[t]
    }

    #[inline]
    pub fn dependency(&self, t1: usize, t2: usize) -> f64 {
        self.dependency[t1 * self.n + t2]
    }

    /// Row-major dependency matrix, entries in [0, 1).
    pub fn dependency_matrix(&self) -> &[f64] {
        &self.dependency
    }

    /// Precomputed equivalent of [`EventLog::follows_k`].
    #[inline]
    pub fn kth_follows(&self, t1: usize, t2: usize, k: usize) -> bool {
        debug_assert!(k >= 1);
        match self.kth.get(k - 1) {
            Some(table) => table[t1 * self.n + t2] != 0,
            None => false,
        }
    }

    pub fn max_trace_len(&self) -> usize {
        self.max_trace_len
    }

    pub(crate) fn variants(&self) -> &[Variant] {
        &self.variants
    }
}

/// Consolidates an event log into [`FollowsStats`].
///
/// The dependency measure is `f(t1,t2) / (f(t1,t2) + f(t2,t1) + 1)` for
/// distinct tasks and `f(t,t) / (f(t,t) + 1)` for self-loops, where `f`
/// is the directly-follows count. Values lie in [0, 1) and grow with the
/// observed evidence.
pub fn build_stats(log: &EventLog) -> FollowsStats {
    let n = log.n();
    let mut follows_count = vec![0u64; n * n];
    let mut visits = vec![0u64; n];
    let max_trace_len = log
        .traces()
        .iter()
        .map(|t| t.events.len())
        .max()
        .unwrap_or(0);

    let mut kth: Vec<Vec<u8>> = vec![vec![0u8; n * n]; max_trace_len.saturating_sub(1)];
    let mut variant_index: HashMap<&[usize], usize> = HashMap::new();
    let mut variants: Vec<Variant> = Vec::new();

    for trace in log.traces() {
        let ev = &trace.events;
        for &t in ev {
            visits[t] += 1;
        }
        for w in ev.windows(2) {
            follows_count[w[0] * n + w[1]] += 1;
        }
        for i in 0..ev.len() {
            for j in i + 1..ev.len() {
                kth[j - i - 1][ev[i] * n + ev[j]] = 1;
            }
        }
        match variant_index.get(ev.as_slice()) {
            Some(&v) => variants[v].count += 1,
            None => {
                let mut pairs: Vec<(usize, usize)> = ev.windows(2).map(|w| (w[0], w[1])).collect();
                pairs.sort_unstable();
                pairs.dedup();
                variants.push(Variant {
                    events: ev.clone(),
                    count: 1,
                    pairs,
                });
                variant_index.insert(ev.as_slice(), variants.len() - 1);
            }
        }
    }
    let follows_bool: Vec<u8> = follows_count.iter().map(|&c| (c > 0) as u8).collect();

    let mut dependency = vec![0.0f64; n * n];
    for t1 in 0..n {
        for t2 in 0..n {
            let f = follows_count[t1 * n + t2] as f64;
            dependency[t1 * n + t2] = if t1 == t2 {
                f / (f + 1.0)
            } else {
                let g = follows_count[t2 * n + t1] as f64;
                f / (f + g + 1.0)
            };
        }
    }

    debug_assert_eq!(visits.iter().sum::<u64>() as usize, log.event_count());

    FollowsStats {
        n,
        trace_count: log.trace_count() as u64,
        follows_count,
        follows_bool,
        visits,
        dependency,
        kth,
        max_trace_len,
        variants,
    }
}
