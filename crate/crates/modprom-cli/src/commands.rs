//! Subcommand implementations. Every handler returns `Failure` with the
//! exit code for its error class: 2 for unreadable or malformed inputs,
//! 3 for invalid configuration, 4 for task-set mismatches, 5 for
//! degenerate tuning responses.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use modprom::causality::{
    export_dot, export_matrix_csv, export_pnml, parse_matrix_csv, to_petri_net,
};
use modprom::evolution::run_many;
use modprom::metrics::{completeness, evaluate};
use modprom::pareto::{dominates, ObjectivePoint};
use modprom::tuning::{
    analyze_responses, read_responses_csv, tune, write_main_effects_csv, write_report_csv,
    DEFAULT_LEVELS_CR1, DEFAULT_LEVELS_CR2,
};
use modprom::{
    build_stats, weighted_sum, CausalityMatrix, Error, EventLog, EvolutionConfig, LogFormat,
};

use crate::report::{DiscoverConfigEcho, EvaluateReport, ParetoReport};
use crate::{DiscoverArgs, EvaluateArgs, RankArgs, StatsArgs, TuneArgs};

pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn new(code: i32, message: impl ToString) -> Failure {
        Failure {
            code,
            message: message.to_string(),
        }
    }
}

pub type CmdResult = Result<(), Failure>;

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::EmptyLog
        | Error::BadHeader(_)
        | Error::BadRow(_)
        | Error::XesParse(_)
        | Error::BadMatrixFile(_)
        | Error::Io(_) => 2,
        Error::PopulationTooSmall(_) | Error::InvalidConfig(_) => 3,
        Error::TaskSetMismatch { .. } => 4,
        Error::DegenerateResponse(_) => 5,
    }
}

fn lib_err(e: Error) -> Failure {
    Failure::new(exit_code(&e), &e)
}

fn load_log(path: &Path, format: Option<LogFormat>) -> Result<EventLog, Failure> {
    let format = format.unwrap_or_else(|| LogFormat::from_extension(path));
    let bytes = fs::read(path)
        .map_err(|e| Failure::new(2, format!("cannot read {}: {e}", path.display())))?;
    let log = match format {
        LogFormat::Traces => EventLog::parse_traces(&bytes),
        LogFormat::Csv => EventLog::parse_csv(&bytes),
        LogFormat::Xes => EventLog::parse_xes_minimal(&bytes),
    };
    log.map_err(lib_err)
}

fn format_name(path: &Path, format: Option<LogFormat>) -> &'static str {
    match format.unwrap_or_else(|| LogFormat::from_extension(path)) {
        LogFormat::Traces => "traces",
        LogFormat::Csv => "csv",
        LogFormat::Xes => "xes",
    }
}

fn write_file(path: &Path, contents: &str) -> CmdResult {
    fs::write(path, contents)
        .map_err(|e| Failure::new(1, format!("cannot write {}: {e}", path.display())))
}

pub fn discover(args: &DiscoverArgs) -> CmdResult {
    let log = load_log(&args.log, args.format)?;
    let cfg = EvolutionConfig {
        population_size: args.pop,
        cr1: args.cr1,
        cr2: args.cr2,
        max_iterations: args.max_iters,
        stall_iterations: args.stall,
        seed: args.seed,
        runs: args.runs,
    };
    cfg.validate().map_err(lib_err)?;

    let result = run_many(&log, &cfg).map_err(lib_err)?;

    // re-check the reported front before anything reaches disk
    for (i, a) in result.union_front.iter().enumerate() {
        for (j, b) in result.union_front.iter().enumerate() {
            let pa = ObjectivePoint::new(a.quality.completeness, a.quality.generalization, i);
            let pb = ObjectivePoint::new(b.quality.completeness, b.quality.generalization, j);
            if dominates(&pa, &pb) {
                return Err(Failure::new(
                    1,
                    "internal error: union front contains a dominated model",
                ));
            }
        }
    }

    let out = &args.out;
    let models_dir = out.join("models");
    fs::create_dir_all(&models_dir)
        .map_err(|e| Failure::new(1, format!("cannot create {}: {e}", models_dir.display())))?;

    for (k, entry) in result.union_front.iter().enumerate() {
        let net = to_petri_net(&entry.model, log.tasks());
        write_file(
            &models_dir.join(format!("model_{k}.csv")),
            &export_matrix_csv(&entry.model, log.tasks()),
        )?;
        write_file(
            &models_dir.join(format!("model_{k}.dot")),
            &export_dot(&net),
        )?;
        write_file(
            &models_dir.join(format!("model_{k}.pnml")),
            &export_pnml(&net),
        )?;
    }

    let mut timings = String::from("run,iteration,millis\n");
    for run in &result.runs {
        for (i, ms) in run.per_iteration_ms.iter().enumerate() {
            timings.push_str(&format!("{},{},{:.3}\n", run.seed, i + 1, ms));
        }
    }
    write_file(&out.join("timings.csv"), &timings)?;

    let echo = DiscoverConfigEcho {
        log: args.log.display().to_string(),
        format: format_name(&args.log, args.format).to_string(),
        population_size: cfg.population_size,
        cr1: cfg.cr1,
        cr2: cfg.cr2,
        max_iterations: cfg.max_iterations,
        stall_iterations: cfg.stall_iterations,
        seed: cfg.seed,
        runs: cfg.runs,
    };
    let report = ParetoReport::new(echo, &result);
    let json = serde_json::to_string_pretty(&report)
        .map_err(|e| Failure::new(1, format!("cannot serialize report: {e}")))?;
    write_file(&out.join("pareto.json"), &(json + "\n"))?;

    println!(
        "discovered {} non-dominated model(s) over {} run(s)",
        result.union_front.len(),
        result.runs.len()
    );
    println!("  #  completeness  generalization  preciseness  simplicity  weighted_sum");
    for (k, entry) in result.union_front.iter().enumerate() {
        let q = &entry.quality;
        println!(
            "{:>3}  {:>12.3}  {:>14.3}  {:>11.3}  {:>10.3}  {:>12.3}",
            k,
            q.completeness,
            q.generalization,
            q.preciseness,
            q.simplicity,
            weighted_sum(q)
        );
    }
    println!("outputs written to {}", out.display());
    Ok(())
}

/// Reorders a parsed model so its rows and columns follow the log's task
/// dictionary; the matrix file may list the same tasks in another order.
fn align_model(
    model_tasks: &[String],
    model: &CausalityMatrix,
    log: &EventLog,
) -> Result<CausalityMatrix, Failure> {
    let model_set: BTreeSet<&str> = model_tasks.iter().map(String::as_str).collect();
    let log_set: BTreeSet<&str> = log.tasks().iter().map(String::as_str).collect();
    if model_set != log_set {
        let err = Error::TaskSetMismatch {
            only_in_model: model_set
                .difference(&log_set)
                .map(|s| s.to_string())
                .collect(),
            only_in_log: log_set
                .difference(&model_set)
                .map(|s| s.to_string())
                .collect(),
        };
        return Err(lib_err(err));
    }
    let n = log.n();
    let position: Vec<usize> = log
        .tasks()
        .iter()
        .map(|t| model_tasks.iter().position(|m| m == t).unwrap())
        .collect();
    let mut aligned = CausalityMatrix::zeros(n);
    for t1 in 0..n {
        for t2 in 0..n {
            aligned.set(t1, t2, model.is_set(position[t1], position[t2]));
        }
    }
    Ok(aligned)
}

pub fn evaluate_cmd(args: &EvaluateArgs) -> CmdResult {
    let log = load_log(&args.log, args.format)?;
    let bytes = fs::read(&args.model)
        .map_err(|e| Failure::new(2, format!("cannot read {}: {e}", args.model.display())))?;
    let (model_tasks, model) = parse_matrix_csv(&bytes).map_err(lib_err)?;
    let model = align_model(&model_tasks, &model, &log)?;

    let stats = build_stats(&log);
    let quality = evaluate(&model, &stats, &log);
    let (_, diagnostics) = completeness(&model, &stats, &log);
    let report = EvaluateReport {
        metrics: quality,
        weighted_sum: weighted_sum(&quality),
        diagnostics: diagnostics.into(),
    };
    let json = serde_json::to_string_pretty(&report)
        .map_err(|e| Failure::new(1, format!("cannot serialize report: {e}")))?;
    println!("{json}");
    if let Some(out) = &args.out {
        write_file(out, &(json + "\n"))?;
    }
    Ok(())
}

fn parse_levels(spec: &Option<String>, default: [f64; 4]) -> Result<[f64; 4], Failure> {
    let Some(spec) = spec else {
        return Ok(default);
    };
    let parts: Vec<f64> = spec
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::new(3, format!("invalid level list {spec:?}: {e}")))?;
    let levels: [f64; 4] = parts
        .try_into()
        .map_err(|_| Failure::new(3, format!("need exactly 4 levels, got {spec:?}")))?;
    Ok(levels)
}

pub fn tune_cmd(args: &TuneArgs) -> CmdResult {
    let levels_cr1 = parse_levels(&args.levels_cr1, DEFAULT_LEVELS_CR1)?;
    let levels_cr2 = parse_levels(&args.levels_cr2, DEFAULT_LEVELS_CR2)?;

    let outcome = if let Some(responses) = &args.responses {
        let bytes = fs::read(responses)
            .map_err(|e| Failure::new(2, format!("cannot read {}: {e}", responses.display())))?;
        let runs = read_responses_csv(&bytes).map_err(lib_err)?;
        analyze_responses(&runs).map_err(|e| match e {
            // a wrong run count is a malformed responses file, not a config error
            Error::InvalidConfig(msg) => Failure::new(2, msg),
            other => lib_err(other),
        })?
    } else {
        let log_path = args
            .log
            .as_ref()
            .ok_or_else(|| Failure::new(3, "tune needs --log or --responses"))?;
        let log = load_log(log_path, args.format)?;
        let base = EvolutionConfig {
            population_size: args.pop,
            max_iterations: args.max_iters,
            stall_iterations: args.stall,
            seed: args.seed,
            ..Default::default()
        };
        tune(&log, &base, &levels_cr1, &levels_cr2, args.repeats).map_err(lib_err)?
    };

    fs::create_dir_all(&args.out)
        .map_err(|e| Failure::new(1, format!("cannot create {}: {e}", args.out.display())))?;
    write_file(
        &args.out.join("tuning_report.csv"),
        &write_report_csv(&outcome),
    )?;
    write_file(
        &args.out.join("main_effects.csv"),
        &write_main_effects_csv(&outcome),
    )?;
    println!(
        "recommended cr1={} cr2={}",
        outcome.best_cr1, outcome.best_cr2
    );
    Ok(())
}

pub fn stats_cmd(args: &StatsArgs) -> CmdResult {
    let log = load_log(&args.log, args.format)?;
    let stats = build_stats(&log);
    let n = log.n();

    let header = log.tasks().join(",");
    let mut follows = format!("{header}\n");
    let mut dependency = format!("{header}\n");
    for t1 in 0..n {
        let counts: Vec<String> = (0..n)
            .map(|t2| stats.follows_count(t1, t2).to_string())
            .collect();
        follows.push_str(&(counts.join(",") + "\n"));
        let deps: Vec<String> = (0..n)
            .map(|t2| format!("{:.6}", stats.dependency(t1, t2)))
            .collect();
        dependency.push_str(&(deps.join(",") + "\n"));
    }
    let visit_row: Vec<String> = (0..n).map(|t| stats.visits(t).to_string()).collect();
    let visits = format!("{header}\n{}\n", visit_row.join(","));

    println!("# follows_count");
    print!("{follows}");
    println!("# dependency");
    print!("{dependency}");
    println!("# visits");
    print!("{visits}");

    if let Some(out) = &args.out {
        fs::create_dir_all(out)
            .map_err(|e| Failure::new(1, format!("cannot create {}: {e}", out.display())))?;
        write_file(&out.join("follows_count.csv"), &follows)?;
        write_file(&out.join("dependency.csv"), &dependency)?;
        write_file(&out.join("visits.csv"), &visits)?;
    }
    Ok(())
}

struct RankEntry {
    name: String,
    weighted: f64,
}

fn rank_entries_from_value(
    value: &serde_json::Value,
    source: &str,
) -> Result<Vec<RankEntry>, Failure> {
    let objects: Vec<(&serde_json::Value, String)> = match value {
        serde_json::Value::Array(items) => items
            .iter()
            .enumerate()
            .map(|(i, v)| (v, format!("{source}[{i}]")))
            .collect(),
        obj @ serde_json::Value::Object(_) => vec![(obj, source.to_string())],
        _ => {
            return Err(Failure::new(
                2,
                format!("{source}: expected a JSON object or array"),
            ))
        }
    };
    let mut entries = Vec::new();
    for (obj, fallback) in objects {
        let field = |key: &str| -> Result<f64, Failure> {
            obj.get(key)
                .and_then(serde_json::Value::as_f64)
                .ok_or_else(|| Failure::new(2, format!("{fallback}: missing numeric {key:?}")))
        };
        let quality = modprom::QualityVector {
            completeness: field("completeness")?,
            generalization: field("generalization")?,
            preciseness: field("preciseness")?,
            simplicity: field("simplicity")?,
        };
        let name = obj
            .get("name")
            .and_then(serde_json::Value::as_str)
            .map(str::to_owned)
            .unwrap_or(fallback);
        entries.push(RankEntry {
            name,
            weighted: weighted_sum(&quality),
        });
    }
    Ok(entries)
}

pub fn rank_cmd(args: &RankArgs) -> CmdResult {
    let mut entries: Vec<RankEntry> = Vec::new();
    for file in &args.files {
        let bytes = fs::read(file)
            .map_err(|e| Failure::new(2, format!("cannot read {}: {e}", file.display())))?;
        let value: serde_json::Value = serde_json::from_slice(&bytes)
            .map_err(|e| Failure::new(2, format!("{}: {e}", file.display())))?;
        let source = file
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| file.display().to_string());
        entries.extend(rank_entries_from_value(&value, &source)?);
    }

    // dense ranks on the exact parsed values; equal sums share a rank
    entries.sort_by(|a, b| b.weighted.total_cmp(&a.weighted));
    let mut rank = 0usize;
    let mut previous: Option<f64> = None;
    println!("rank  weighted_sum  name");
    for entry in &entries {
        if previous != Some(entry.weighted) {
            rank += 1;
            previous = Some(entry.weighted);
        }
        println!("{rank:>4}  {:>12.3}  {}", entry.weighted, entry.name);
    }
    Ok(())
}

pub fn dispatch(cli: &crate::Cli) -> CmdResult {
    match &cli.command {
        crate::Command::Discover(args) => discover(args),
        crate::Command::Evaluate(args) => evaluate_cmd(args),
        crate::Command::Tune(args) => tune_cmd(args),
        crate::Command::Stats(args) => stats_cmd(args),
        crate::Command::Rank(args) => rank_cmd(args),
    }
}
