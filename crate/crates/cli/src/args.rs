use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use pcaseed::InitKind;

/// Deterministic PCA-percentile seeding for k-means, with baselines,
/// a data merge pipeline and a benchmark harness.
#[derive(Debug, Parser)]
#[command(name = "pcaseed", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Join per-country source CSVs into one numeric feature table.
    Merge(MergeArgs),
    /// Cluster a feature table and write labels, centroids and run metadata.
    Cluster(ClusterArgs),
    /// Sweep k and write the inertia of each clustering.
    Elbow(ElbowArgs),
    /// Repeat clusterings per strategy and report iterations and times.
    Bench(BenchArgs),
    /// Write the first-component scores and percentile groups used for seeding.
    SeedPreview(PreviewArgs),
}

#[derive(Debug, Args)]
pub struct MergeArgs {
    /// Source CSV as `id=path`, or a path whose file stem is the source id.
    #[arg(long, required = true)]
    pub input: Vec<String>,
    /// Merge spec JSON; the built-in COVID-19 spec when omitted.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct LloydArgs {
    /// Convergence threshold on the largest centroid displacement.
    #[arg(long = "tol", default_value_t = 1e-4)]
    pub tol: f64,
    #[arg(long = "max-iter", default_value_t = 300, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_iter: u64,
    /// Cluster raw features instead of z-scores.
    #[arg(long)]
    pub no_standardize: bool,
}

#[derive(Debug, Args)]
pub struct ClusterArgs {
    /// Keyed numeric CSV (key column first), e.g. the output of `merge`.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
    #[arg(long, default_value_t = InitKind::PcaPercentile)]
    pub strategy: InitKind,
    /// Seed for the random and kmeans++ strategies.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub lloyd: LloydArgs,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct ElbowArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub k_min: u64,
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    pub k_max: u64,
    #[arg(long, default_value_t = InitKind::PcaPercentile)]
    pub strategy: InitKind,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub lloyd: LloydArgs,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    /// Strategies to compare; repeat or separate with commas.
    #[arg(
        long,
        alias = "strategies",
        value_delimiter = ',',
        default_values_t = InitKind::ALL.to_vec()
    )]
    pub strategy: Vec<InitKind>,
    /// Trial t of a seeded strategy uses seed `seed-base + t`.
    #[arg(long, default_value_t = 0)]
    pub seed_base: u64,
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
    #[command(flatten)]
    pub lloyd: LloydArgs,
    /// Run timed trials one at a time instead of in parallel.
    #[arg(long)]
    pub serial_timing: bool,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct PreviewArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
    /// Project raw features instead of z-scores.
    #[arg(long)]
    pub no_standardize: bool,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}
