//! Crossover-rate tuning: a Taguchi L16 design over (CR1, CR2) reduced
//! by grey relational analysis. The engine responses (best completeness
//! and generalization per cell) can also be supplied offline from a CSV
//! file, bypassing the engine runs entirely.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::eventlog::EventLog;
use crate::evolution::{run, EvolutionConfig};

pub const DEFAULT_LEVELS_CR1: [f64; 4] = [0.2, 0.4, 0.6, 0.8];
pub const DEFAULT_LEVELS_CR2: [f64; 4] = [0.3, 0.5, 0.7, 0.9];

/// Distinguishing coefficient used for the grey relational coefficients.
pub const DEFAULT_XI: f64 = 0.5;

/// One experimental cell: the factor settings and the two responses.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TuningRun {
    pub cr1: f64,
    pub cr2: f64,
    pub completeness: f64,
    pub generalization: f64,
}

/// The grey relational pipeline stages for all 16 runs.
#[derive(Debug, Clone, Serialize)]
pub struct GreyTable {
    pub normalized: Vec<[f64; 2]>,
    pub delta: Vec<[f64; 2]>,
    pub coefficients: Vec<[f64; 2]>,
    pub grg: Vec<f64>,
    /// `ranks[i]` is the 1-based rank of run i; rank 1 has the largest
    /// grade.
    pub ranks: Vec<usize>,
}

/// Mean grade of one factor level, backing the main-effects plot.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MainEffect {
    pub factor: &'static str,
    pub level: f64,
    pub mean_grg: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct TuningOutcome {
    pub runs: Vec<TuningRun>,
    pub table: GreyTable,
    pub main_effects: Vec<MainEffect>,
    pub best_cr1: f64,
    pub best_cr2: f64,
}

/// The L16 design over two four-level factors: a full factorial in
/// row-major order, CR1 in blocks of four with CR2 cycling inside each
/// block.
pub fn l16_design(levels_cr1: &[f64; 4], levels_cr2: &[f64; 4]) -> Result<Vec<(f64, f64)>> {
    for (name, levels) in [("cr1", levels_cr1), ("cr2", levels_cr2)] {
        for i in 0..4 {
            for j in i + 1..4 {
                if levels[i] == levels[j] {
                    return Err(Error::InvalidConfig(format!(
                        "{name} levels must be distinct, got {levels:?}"
                    )));
                }
            }
        }
    }
    let mut design = Vec::with_capacity(16);
    for &a in levels_cr1 {
        for &b in levels_cr2 {
            design.push((a, b));
        }
    }
    Ok(design)
}

/// Larger-is-better normalization per response column:
/// `(x - min) / (max - min)`. A constant column carries no information
/// and is rejected.
pub fn grey_normalize(responses: &[[f64; 2]]) -> Result<Vec<[f64; 2]>> {
    let mut out = vec![[0.0; 2]; responses.len()];
    for k in 0..2 {
        let column = responses.iter().map(|r| r[k]);
        let min = column.clone().fold(f64::INFINITY, f64::min);
        let max = column.fold(f64::NEG_INFINITY, f64::max);
        let range = max - min;
        if range.is_nan() || range <= 0.0 {
            return Err(Error::DegenerateResponse(format!(
                "response column {k} is constant at {max}"
            )));
        }
        for (i, r) in responses.iter().enumerate() {
            out[i][k] = (r[k] - min) / (max - min);
        }
    }
    Ok(out)
}

/// Deviations from the ideal sequence and the grey relational
/// coefficients `(dmin + xi * dmax) / (delta + xi * dmax)`, with dmin and
/// dmax taken over the whole table.
pub fn grey_coefficient(normalized: &[[f64; 2]], xi: f64) -> (Vec<[f64; 2]>, Vec<[f64; 2]>) {
    let delta: Vec<[f64; 2]> = normalized
        .iter()
        .map(|row| [(1.0 - row[0]).abs(), (1.0 - row[1]).abs()])
        .collect();
    let dmin = delta
        .iter()
        .flatten()
        .copied()
        .fold(f64::INFINITY, f64::min);
    let dmax = delta
        .iter()
        .flatten()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    let coefficients = delta
        .iter()
        .map(|row| {
            [
                (dmin + xi * dmax) / (row[0] + xi * dmax),
                (dmin + xi * dmax) / (row[1] + xi * dmax),
            ]
        })
        .collect();
    (delta, coefficients)
}

/// Grades (mean coefficient per run) and 1-based descending ranks, ties
/// broken toward the lower run index.
pub fn grey_grade(coefficients: &[[f64; 2]]) -> (Vec<f64>, Vec<usize>) {
    let grg: Vec<f64> = coefficients
        .iter()
        .map(|row| (row[0] + row[1]) / 2.0)
        .collect();
    let mut order: Vec<usize> = (0..grg.len()).collect();
    order.sort_by(|&a, &b| grg[b].total_cmp(&grg[a]).then(a.cmp(&b)));
    let mut ranks = vec![0usize; grg.len()];
    for (position, &run) in order.iter().enumerate() {
        ranks[run] = position + 1;
    }
    (grg, ranks)
}

fn mean(values: impl Iterator<Item = f64>) -> f64 {
    let (sum, count) = values.fold((0.0, 0usize), |(s, c), v| (s + v, c + 1));
    sum / count as f64
}

/// Runs the grey relational pipeline on recorded responses and derives
/// the per-factor level means and the recommended settings.
pub fn analyze_responses(runs: &[TuningRun]) -> Result<TuningOutcome> {
    if runs.len() != 16 {
        return Err(Error::InvalidConfig(format!(
            "expected 16 tuning runs, got {}",
            runs.len()
        )));
    }
    let responses: Vec<[f64; 2]> = runs
        .iter()
        .map(|r| [r.completeness, r.generalization])
        .collect();
    let normalized = grey_normalize(&responses)?;
    let (delta, coefficients) = grey_coefficient(&normalized, DEFAULT_XI);
    let (grg, ranks) = grey_grade(&coefficients);

    let mut main_effects = Vec::new();
    let mut best = [f64::NAN; 2];
    for (slot, factor) in ["cr1", "cr2"].into_iter().enumerate() {
        let level_of = |r: &TuningRun| if slot == 0 { r.cr1 } else { r.cr2 };
        let mut levels: Vec<f64> = Vec::new();
        for r in runs {
            if !levels.contains(&level_of(r)) {
                levels.push(level_of(r));
            }
        }
        let mut best_level = levels[0];
        let mut best_mean = f64::NEG_INFINITY;
        for &level in &levels {
            let m = mean(
                runs.iter()
                    .enumerate()
                    .filter(|(_, r)| level_of(r) == level)
                    .map(|(i, _)| grg[i]),
            );
            if m > best_mean {
                best_mean = m;
                best_level = level;
            }
            main_effects.push(MainEffect {
                factor,
                level,
                mean_grg: m,
            });
        }
        best[slot] = best_level;
    }

    Ok(TuningOutcome {
        runs: runs.to_vec(),
        table: GreyTable {
            normalized,
            delta,
            coefficients,
            grg,
            ranks,
        },
        main_effects,
        best_cr1: best[0],
        best_cr2: best[1],
    })
}

/// Runs the engine once per L16 cell (averaging `repeats` seeded runs,
/// recording the front's best completeness and best generalization) and
/// feeds the responses through the grey relational pipeline.
pub fn tune(
    log: &EventLog,
    base: &EvolutionConfig,
    levels_cr1: &[f64; 4],
    levels_cr2: &[f64; 4],
    repeats: usize,
) -> Result<TuningOutcome> {
    if repeats < 1 {
        return Err(Error::InvalidConfig("repeats must be >= 1".into()));
    }
    let design = l16_design(levels_cr1, levels_cr2)?;
    let mut runs = Vec::with_capacity(16);
    for (cell, (cr1, cr2)) in design.into_iter().enumerate() {
        let mut sum_c = 0.0;
        let mut sum_g = 0.0;
        for rep in 0..repeats {
            let cfg = EvolutionConfig {
                cr1,
                cr2,
                runs: 1,
                seed: base
                    .seed
                    .wrapping_add(cell as u64 * 7919)
                    .wrapping_add(rep as u64),
                ..base.clone()
            };
            let result = run(log, &cfg)?;
            sum_c += result
                .pareto
                .iter()
                .map(|e| e.quality.completeness)
                .fold(f64::NEG_INFINITY, f64::max);
            sum_g += result
                .pareto
                .iter()
                .map(|e| e.quality.generalization)
                .fold(f64::NEG_INFINITY, f64::max);
        }
        runs.push(TuningRun {
            cr1,
            cr2,
            completeness: sum_c / repeats as f64,
            generalization: sum_g / repeats as f64,
        });
    }
    analyze_responses(&runs)
}

/// Reads tuning responses from CSV with (case-insensitive) columns cr1,
/// cr2, completeness, generalization; extra columns are ignored.
pub fn read_responses_csv(input: &[u8]) -> Result<Vec<TuningRun>> {
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
    let cols = match (
        find("cr1"),
        find("cr2"),
        find("completeness"),
        find("generalization"),
    ) {
        (Some(a), Some(b), Some(c), Some(d)) => [a, b, c, d],
        _ => {
            return Err(Error::BadHeader(
                "need cr1, cr2, completeness and generalization columns".into(),
            ))
        }
    };
    let mut runs = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let rowno = i + 1;
        let record = record.map_err(|_| Error::BadRow(rowno))?;
        let mut values = [0.0f64; 4];
        for (slot, &col) in cols.iter().enumerate() {
            values[slot] = record
                .get(col)
                .and_then(|f| f.trim().parse::<f64>().ok())
                .ok_or(Error::BadRow(rowno))?;
        }
        runs.push(TuningRun {
            cr1: values[0],
            cr2: values[1],
            completeness: values[2],
            generalization: values[3],
        });
    }
    Ok(runs)
}

fn fmt6(v: f64) -> String {
    format!("{v:.6}")
}

/// The tuning report CSV: one row per run with every pipeline stage.
pub fn write_report_csv(outcome: &TuningOutcome) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record([
            "run",
            "cr1",
            "cr2",
            "completeness",
            "generalization",
            "norm_c",
            "norm_g",
            "coef_c",
            "coef_g",
            "grg",
            "rank",
        ])
        .expect("csv write");
    for (i, run) in outcome.runs.iter().enumerate() {
        writer
            .write_record([
                (i + 1).to_string(),
                run.cr1.to_string(),
                run.cr2.to_string(),
                fmt6(run.completeness),
                fmt6(run.generalization),
                fmt6(outcome.table.normalized[i][0]),
                fmt6(outcome.table.normalized[i][1]),
                fmt6(outcome.table.coefficients[i][0]),
                fmt6(outcome.table.coefficients[i][1]),
                fmt6(outcome.table.grg[i]),
                outcome.table.ranks[i].to_string(),
            ])
            .expect("csv write");
    }
    String::from_utf8(writer.into_inner().expect("csv flush")).expect("csv utf8")
}

/// The main-effects CSV: mean grade per factor level.
pub fn write_main_effects_csv(outcome: &TuningOutcome) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(["factor", "level", "mean_grg"])
        .expect("csv write");
    for effect in &outcome.main_effects {
        writer
            .write_record([
                effect.factor.to_string(),
                effect.level.to_string(),
                fmt6(effect.mean_grg),
            ])
            .expect("csv write");
    }
    String::from_utf8(writer.into_inner().expect("csv flush")).expect("csv utf8")
}
