use std::fs;
use std::path::Path;

use pcaseed::bench::{export_report, format_summary, run_bench, summarize, TrialPlan};
use pcaseed::engine::elbow_sweep;
use pcaseed::pipeline::{
    covid_default_spec, load_dataset, merge_files, write_dataset, MergeSpec, SourceInput,
};
use pcaseed::seeding::seed_preview;
use pcaseed::{
    cluster, ClusterOptions, Dataset, Error, InitKind, InitStrategy, KMeansConfig, Result,
    SeedingConfig,
};
use serde::Serialize;

use crate::args::{BenchArgs, ClusterArgs, ElbowArgs, LloydArgs, MergeArgs, PreviewArgs};

pub const MERGED_FILE: &str = "merged.csv";
pub const MERGE_REPORT_FILE: &str = "merge_report.json";
pub const LABELS_FILE: &str = "labels.csv";
pub const CENTROIDS_FILE: &str = "centroids.csv";
pub const RUN_FILE: &str = "run.json";
pub const ELBOW_FILE: &str = "elbow.csv";
pub const PREVIEW_FILE: &str = "seed_preview.csv";
pub const SEED_CENTROIDS_FILE: &str = "seed_centroids.csv";

fn write_csv(path: &Path, rows: impl IntoIterator<Item = Vec<String>>) -> Result<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.write_record(&r)
            .map_err(|e| Error::Io(std::io::Error::other(e)))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
    fs::write(path, bytes)?;
    Ok(())
}

fn centroid_rows(names: &[String], centroids: &[Vec<f64>]) -> Vec<Vec<String>> {
    let mut header = vec!["cluster".to_owned()];
    header.extend(names.iter().cloned());
    let mut rows = vec![header];
    rows.extend(centroids.iter().enumerate().map(|(i, c)| {
        let mut row = vec![i.to_string()];
        row.extend(c.iter().map(f64::to_string));
        row
    }));
    rows
}

fn config(k: u64, lloyd: &LloydArgs) -> Result<KMeansConfig> {
    let config = KMeansConfig {
        k: k as usize,
        tolerance: lloyd.tol,
        max_iterations: lloyd.max_iter as usize,
    };
    config.validate()?;
    Ok(config)
}

fn strategy(kind: InitKind, seed: u64) -> Result<InitStrategy> {
    InitStrategy::new(kind, kind.is_seeded().then_some(seed))
}

fn prepare_out_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    Ok(())
}

pub fn merge(args: &MergeArgs) -> Result<()> {
    let spec = match &args.spec {
        Some(p) => MergeSpec::from_json_file(p)?,
        None => covid_default_spec(),
    };
    spec.validate()?;
    let inputs: Vec<SourceInput> = args.input.iter().map(|a| SourceInput::parse(a)).collect();
    let (dataset, report) = merge_files(&inputs, &spec)?;
    prepare_out_dir(&args.out_dir)?;
    write_dataset(&args.out_dir.join(MERGED_FILE), &spec.key_name, &dataset)?;
    fs::write(
        args.out_dir.join(MERGE_REPORT_FILE),
        serde_json::to_string_pretty(&report)? + "\n",
    )?;
    println!(
        "merged {} rows x {} attributes ({} keys dropped by the join, {} rows dropped for missing values)",
        dataset.keys.len(),
        dataset.matrix.n_cols(),
        report.dropped.values().map(Vec::len).sum::<usize>(),
        report.dropped_rows.len()
    );
    Ok(())
}

#[derive(Serialize)]
struct RunInfo<'a> {
    strategy: InitKind,
    seed: Option<u64>,
    k: usize,
    n_rows: usize,
    standardized: bool,
    tolerance: f64,
    max_iterations: usize,
    iterations: usize,
    converged: bool,
    inertia: f64,
    inertia_history: &'a [f64],
    /// Members per cluster; a zero marks a centroid that lost all its rows.
    cluster_sizes: Vec<usize>,
    time_ms: f64,
}

fn load(path: &Path) -> Result<Dataset> {
    load_dataset(path)
}

pub fn cluster_cmd(args: &ClusterArgs) -> Result<()> {
    let config = config(args.k, &args.lloyd)?;
    let strategy = strategy(args.strategy, args.seed)?;
    let data = load(&args.input)?;
    if data.matrix.n_rows() < config.k {
        return Err(Error::InsufficientRows {
            rows: data.matrix.n_rows(),
            k: config.k,
        });
    }
    let options = ClusterOptions {
        standardize: !args.lloyd.no_standardize,
    };
    let run = cluster(&data.matrix, &strategy, &config, options)?;
    prepare_out_dir(&args.out_dir)?;

    let mut labels = vec![vec!["key".to_owned(), "cluster".to_owned()]];
    labels.extend(
        data.keys
            .iter()
            .zip(&run.result.labels)
            .map(|(key, l)| vec![key.clone(), l.to_string()]),
    );
    write_csv(&args.out_dir.join(LABELS_FILE), labels)?;
    write_csv(
        &args.out_dir.join(CENTROIDS_FILE),
        centroid_rows(data.matrix.col_names(), &run.original_centroids()),
    )?;
    let info = RunInfo {
        strategy: strategy.kind,
        seed: strategy.seed,
        k: config.k,
        n_rows: data.matrix.n_rows(),
        standardized: options.standardize,
        tolerance: config.tolerance,
        max_iterations: config.max_iterations,
        iterations: run.result.iterations,
        converged: run.result.converged,
        inertia: run.result.inertia,
        inertia_history: &run.result.inertia_history,
        cluster_sizes: (0..config.k)
            .map(|c| run.result.labels.iter().filter(|&&l| l == c).count())
            .collect(),
        time_ms: run.result.wall_time.as_nanos() as f64 / 1e6,
    };
    fs::write(
        args.out_dir.join(RUN_FILE),
        serde_json::to_string_pretty(&info)? + "\n",
    )?;
    println!(
        "{}: k={} iterations={} converged={} inertia={}",
        strategy.kind, config.k, info.iterations, info.converged, info.inertia
    );
    Ok(())
}

pub fn elbow(args: &ElbowArgs) -> Result<()> {
    if args.k_min > args.k_max {
        return Err(Error::InvalidConfig(format!(
            "--k-min {} is greater than --k-max {}",
            args.k_min, args.k_max
        )));
    }
    let config = config(args.k_min, &args.lloyd)?;
    let strategy = strategy(args.strategy, args.seed)?;
    let data = load(&args.input)?;
    let options = ClusterOptions {
        standardize: !args.lloyd.no_standardize,
    };
    let points = elbow_sweep(
        &data.matrix,
        args.k_min as usize,
        args.k_max as usize,
        &strategy,
        &config,
        options,
    )?;
    prepare_out_dir(&args.out_dir)?;
    let mut rows = vec![vec![
        "k".to_owned(),
        "inertia".to_owned(),
        "note".to_owned(),
    ]];
    for p in &points {
        rows.push(vec![
            p.k.to_string(),
            p.inertia.map(|v| v.to_string()).unwrap_or_default(),
            p.note.clone().unwrap_or_default(),
        ]);
        match p.inertia {
            Some(v) => println!("k={:<3} inertia={v}", p.k),
            None => println!("k={:<3} unavailable", p.k),
        }
    }
    write_csv(&args.out_dir.join(ELBOW_FILE), rows)
}

pub fn bench(args: &BenchArgs) -> Result<()> {
    let config = config(args.k, &args.lloyd)?;
    let mut strategies: Vec<InitKind> = Vec::new();
    for s in &args.strategy {
        if !strategies.contains(s) {
            strategies.push(*s);
        }
    }
    let mut plan = TrialPlan::new(strategies, args.trials as usize, args.seed_base, config);
    plan.options = ClusterOptions {
        standardize: !args.lloyd.no_standardize,
    };
    plan.serial_timing = args.serial_timing;
    let data = load(&args.input)?;
    let run = run_bench(&data.matrix, &plan)?;
    for e in &run.errors {
        eprintln!(
            "warning: {} trial {} failed: {}",
            e.strategy, e.trial, e.message
        );
    }
    let records = run.records();
    let summary = summarize(&records)?;
    export_report(&records, &summary, &args.out_dir)?;
    print!("{}", format_summary(&summary));
    Ok(())
}

pub fn seed_preview_cmd(args: &PreviewArgs) -> Result<()> {
    let seeding = SeedingConfig::new(args.k as usize).standardize(!args.no_standardize);
    seeding.validate()?;
    let data = load(&args.input)?;
    let preview = seed_preview(&data.matrix, &seeding)?;
    prepare_out_dir(&args.out_dir)?;

    let mut rows = vec![["row_id", "pc1", "pc2", "group_index"]
        .map(str::to_owned)
        .to_vec()];
    for (i, key) in data.keys.iter().enumerate() {
        let score = |c: usize| {
            preview
                .scores
                .as_ref()
                .filter(|s| c < s.n_cols())
                .map(|s| s.get(i, c).to_string())
                .unwrap_or_default()
        };
        rows.push(vec![
            key.clone(),
            score(0),
            score(1),
            preview.assignment.groups[i].to_string(),
        ]);
    }
    write_csv(&args.out_dir.join(PREVIEW_FILE), rows)?;
    write_csv(
        &args.out_dir.join(SEED_CENTROIDS_FILE),
        centroid_rows(data.matrix.col_names(), &preview.centroids.centroids),
    )?;
    println!(
        "{} groups of sizes {:?}; cut values {:?}",
        preview.assignment.sizes.len(),
        preview.assignment.sizes,
        preview.assignment.cut_values
    );
    Ok(())
}
