//! Repeated clustering trials per initialization strategy: iteration counts,
//! wall times and inertia, summarized and exported as CSV/JSON.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use rayon::prelude::*;
use serde::Serialize;

use crate::engine::{
    cluster_prepared, ClusterOptions, ClusteringSpace, InitKind, InitStrategy, KMeansConfig,
};
use crate::error::{Error, Result};
use crate::matrix::FeatureMatrix;
use crate::pipeline::{load_csv, RawTable};

pub const TRIALS_FILE: &str = "bench_trials.csv";
pub const SUMMARY_FILE: &str = "bench_summary.json";
pub const PLOTDATA_FILE: &str = "bench_plotdata.csv";

const TRIALS_HEADER: [&str; 7] = [
    "strategy",
    "trial",
    "seed",
    "iterations",
    "time_ms",
    "inertia",
    "converged",
];

/// Which strategies to run, how often, and with which seeds.
///
/// Trial `t` of a seeded strategy uses seed `seed_base + t`.
#[derive(Debug, Clone)]
pub struct TrialPlan {
    pub strategies: Vec<InitKind>,
    pub n_trials: usize,
    pub seed_base: u64,
    pub config: KMeansConfig,
    pub options: ClusterOptions,
    /// Run timed cells one after another instead of in parallel.
    pub serial_timing: bool,
}

impl TrialPlan {
    pub fn new(
        strategies: Vec<InitKind>,
        n_trials: usize,
        seed_base: u64,
        config: KMeansConfig,
    ) -> Self {
        Self {
            strategies,
            n_trials,
            seed_base,
            config,
            options: ClusterOptions::default(),
            serial_timing: false,
        }
    }

    pub fn seed_for(&self, kind: InitKind, trial: usize) -> Option<u64> {
        kind.is_seeded()
            .then(|| self.seed_base.wrapping_add(trial as u64))
    }

    fn validate(&self) -> Result<()> {
        if self.n_trials == 0 {
            return Err(Error::InvalidConfig("n_trials must be at least 1".into()));
        }
        if self.strategies.is_empty() {
            return Err(Error::InvalidConfig("no strategies to benchmark".into()));
        }
        self.config.validate()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub strategy: InitKind,
    pub trial: usize,
    pub seed: Option<u64>,
    pub iterations: usize,
    /// Initialization plus Lloyd.
    pub wall_time: Duration,
    pub inertia: f64,
    pub converged: bool,
}

impl TrialRecord {
    pub fn time_ms(&self) -> f64 {
        self.wall_time.as_nanos() as f64 / 1e6
    }
}

/// A record plus the run's final centroids in original units.
#[derive(Debug, Clone)]
pub struct TrialOutcome {
    pub record: TrialRecord,
    pub centroids: Vec<Vec<f64>>,
}

/// A cell that failed; the other cells still run.
#[derive(Debug, Clone, PartialEq)]
pub struct CellError {
    pub strategy: InitKind,
    pub trial: usize,
    pub seed: Option<u64>,
    pub message: String,
}

#[derive(Debug, Clone)]
pub struct BenchRun {
    pub outcomes: Vec<TrialOutcome>,
    pub errors: Vec<CellError>,
}

impl BenchRun {
    pub fn records(&self) -> Vec<TrialRecord> {
        self.outcomes.iter().map(|o| o.record.clone()).collect()
    }
}

/// Executes every (strategy, trial) cell of the plan on `data`.
///
/// Preprocessing (standardization) happens once, untimed. Each record's
/// time covers that run's initialization and Lloyd iterations, including
/// the PCA work of the percentile strategy.
pub fn run_bench(data: &FeatureMatrix, plan: &TrialPlan) -> Result<BenchRun> {
    plan.validate()?;
    let space = ClusteringSpace::prepare(data, plan.options)?;
    let cells: Vec<(InitKind, usize)> = plan
        .strategies
        .iter()
        .flat_map(|&s| (0..plan.n_trials).map(move |t| (s, t)))
        .collect();

    let run_cell =
        |&(kind, trial): &(InitKind, usize)| -> std::result::Result<TrialOutcome, CellError> {
            let seed = plan.seed_for(kind, trial);
            let fail = |e: Error| CellError {
                strategy: kind,
                trial,
                seed,
                message: e.to_string(),
            };
            let strategy = InitStrategy::new(kind, seed).map_err(fail)?;
            let run = cluster_prepared(data, &space, &strategy, &plan.config).map_err(fail)?;
            Ok(TrialOutcome {
                centroids: run.original_centroids(),
                record: TrialRecord {
                    strategy: kind,
                    trial,
                    seed,
                    iterations: run.result.iterations,
                    wall_time: run.result.wall_time.max(Duration::from_nanos(1)),
                    inertia: run.result.inertia,
                    converged: run.result.converged,
                },
            })
        };

    let results: Vec<_> = if plan.serial_timing {
        cells.iter().map(run_cell).collect()
    } else {
        cells.par_iter().map(run_cell).collect()
    };
    let mut outcomes = Vec::new();
    let mut errors = Vec::new();
    for r in results {
        match r {
            Ok(o) => outcomes.push(o),
            Err(e) => errors.push(e),
        }
    }
    Ok(BenchRun { outcomes, errors })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Moments {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    /// Population standard deviation over trials.
    pub stddev: f64,
}

impl Moments {
    fn of(values: &[f64]) -> Self {
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
        Self {
            min: values.iter().copied().fold(f64::INFINITY, f64::min),
            max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            mean,
            stddev: var.sqrt(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Range {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrategySummary {
    pub strategy: InitKind,
    pub trials: usize,
    pub converged: usize,
    pub iterations: Moments,
    pub time_ms: Moments,
    pub inertia: Range,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchSummary {
    /// In order of first appearance in the records.
    pub strategies: Vec<StrategySummary>,
}

impl BenchSummary {
    pub fn get(&self, kind: InitKind) -> Option<&StrategySummary> {
        self.strategies.iter().find(|s| s.strategy == kind)
    }
}

pub fn summarize(records: &[TrialRecord]) -> Result<BenchSummary> {
    if records.is_empty() {
        return Err(Error::NoRecords);
    }
    let mut order: Vec<InitKind> = Vec::new();
    for r in records {
        if !order.contains(&r.strategy) {
            order.push(r.strategy);
        }
    }
    let strategies = order
        .into_iter()
        .map(|kind| {
            let rs: Vec<&TrialRecord> = records.iter().filter(|r| r.strategy == kind).collect();
            let iters: Vec<f64> = rs.iter().map(|r| r.iterations as f64).collect();
            let times: Vec<f64> = rs.iter().map(|r| r.time_ms()).collect();
            let inertia = Moments::of(&rs.iter().map(|r| r.inertia).collect::<Vec<_>>());
            StrategySummary {
                strategy: kind,
                trials: rs.len(),
                converged: rs.iter().filter(|r| r.converged).count(),
                iterations: Moments::of(&iters),
                time_ms: Moments::of(&times),
                inertia: Range {
                    min: inertia.min,
                    max: inertia.max,
                    mean: inertia.mean,
                },
            }
        })
        .collect();
    Ok(BenchSummary { strategies })
}

/// Paths written by [`export_report`].
#[derive(Debug, Clone)]
pub struct BenchFiles {
    pub trials: PathBuf,
    pub summary: PathBuf,
    pub plotdata: PathBuf,
}

fn write_csv(path: &Path, rows: Vec<Vec<String>>) -> Result<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.write_record(&r).map_err(crate::pipeline::csv_io)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
    fs::write(path, bytes)?;
    Ok(())
}

/// Writes the per-trial CSV, the summary JSON and the plot-ready CSV
/// (trial index against iterations and time, one column pair per strategy)
/// into `out_dir`.
pub fn export_report(
    records: &[TrialRecord],
    summary: &BenchSummary,
    out_dir: &Path,
) -> Result<BenchFiles> {
    if records.is_empty() {
        return Err(Error::NoRecords);
    }
    fs::create_dir_all(out_dir)?;
    let files = BenchFiles {
        trials: out_dir.join(TRIALS_FILE),
        summary: out_dir.join(SUMMARY_FILE),
        plotdata: out_dir.join(PLOTDATA_FILE),
    };

    let mut rows = vec![TRIALS_HEADER
        .iter()
        .map(|s| (*s).to_owned())
        .collect::<Vec<_>>()];
    rows.extend(records.iter().map(|r| {
        vec![
            r.strategy.label().to_owned(),
            r.trial.to_string(),
            r.seed.map(|s| s.to_string()).unwrap_or_default(),
            r.iterations.to_string(),
            r.time_ms().to_string(),
            r.inertia.to_string(),
            r.converged.to_string(),
        ]
    }));
    write_csv(&files.trials, rows)?;

    fs::write(
        &files.summary,
        serde_json::to_string_pretty(summary)? + "\n",
    )?;

    let kinds: Vec<InitKind> = summary.strategies.iter().map(|s| s.strategy).collect();
    let max_trial = records.iter().map(|r| r.trial).max().unwrap_or(0);
    let mut header = vec!["trial".to_owned()];
    for k in &kinds {
        header.push(format!("{k}_iterations"));
        header.push(format!("{k}_time_ms"));
    }
    let mut rows = vec![header];
    for t in 0..=max_trial {
        let mut row = vec![t.to_string()];
        for k in &kinds {
            match records.iter().find(|r| r.strategy == *k && r.trial == t) {
                Some(r) => {
                    row.push(r.iterations.to_string());
                    row.push(r.time_ms().to_string());
                }
                None => row.extend([String::new(), String::new()]),
            }
        }
        rows.push(row);
    }
    write_csv(&files.plotdata, rows)?;
    Ok(files)
}

/// Parses a per-trial CSV written by [`export_report`].
pub fn read_trials_csv(path: &Path) -> Result<Vec<TrialRecord>> {
    let table = load_csv(path, "bench_trials")?;
    parse_trials(&table, path)
}

fn parse_trials(table: &RawTable, path: &Path) -> Result<Vec<TrialRecord>> {
    if table.header != TRIALS_HEADER {
        return Err(Error::MalformedCsv {
            path: path.to_path_buf(),
            line: 1,
            message: format!("unexpected header {:?}", table.header),
        });
    }
    table
        .rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let bad = |what: &str| Error::MalformedCsv {
                path: path.to_path_buf(),
                line: i as u64 + 2,
                message: format!("bad {what}"),
            };
            let time_ms: f64 = row[4].parse().map_err(|_| bad("time_ms"))?;
            Ok(TrialRecord {
                strategy: row[0].parse().map_err(|_| bad("strategy"))?,
                trial: row[1].parse().map_err(|_| bad("trial"))?,
                seed: if row[2].is_empty() {
                    None
                } else {
                    Some(row[2].parse().map_err(|_| bad("seed"))?)
                },
                iterations: row[3].parse().map_err(|_| bad("iterations"))?,
                wall_time: Duration::from_nanos((time_ms * 1e6).round() as u64),
                inertia: row[5].parse().map_err(|_| bad("inertia"))?,
                converged: row[6].parse().map_err(|_| bad("converged"))?,
            })
        })
        .collect()
}

/// Fixed-width text table of the summary for terminals.
pub fn format_summary(summary: &BenchSummary) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<16} {:>6} {:>9} {:>9} {:>9} {:>9} {:>12} {:>12} {:>14}",
        "strategy",
        "trials",
        "iter_min",
        "iter_max",
        "iter_mean",
        "iter_sd",
        "time_ms_mean",
        "time_ms_sd",
        "inertia_mean"
    );
    for s in &summary.strategies {
        let _ = writeln!(
            out,
            "{:<16} {:>6} {:>9} {:>9} {:>9.3} {:>9.3} {:>12.4} {:>12.4} {:>14.6}",
            s.strategy.label(),
            s.trials,
            s.iterations.min,
            s.iterations.max,
            s.iterations.mean,
            s.iterations.stddev,
            s.time_ms.mean,
            s.time_ms.stddev,
            s.inertia.mean
        );
    }
    out
}
