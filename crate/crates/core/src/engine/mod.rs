//! Lloyd's k-means with pluggable initialization.

mod elbow;
mod init;
mod lloyd;
mod metrics;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::FeatureMatrix;
use crate::numeric::StandardizationStats;
use crate::seeding::{pca_percentile_init, CentroidSet, SeedingConfig};

pub use elbow::{elbow_sweep, ElbowPoint};
pub use init::{kmeans_pp_init, random_init, rng_from_seed};
pub use lloyd::{assign, inertia, lloyd, update_centroids};
pub use metrics::adjusted_rand_index;

/// Initialization family, without a seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum InitKind {
    #[serde(rename = "random")]
    Random,
    #[serde(rename = "kmeans++")]
    KMeansPlusPlus,
    #[serde(rename = "pca-percentile")]
    PcaPercentile,
}

impl InitKind {
    pub const ALL: [InitKind; 3] = [
        InitKind::Random,
        InitKind::KMeansPlusPlus,
        InitKind::PcaPercentile,
    ];

    pub fn label(self) -> &'static str {
        match self {
            InitKind::Random => "random",
            InitKind::KMeansPlusPlus => "kmeans++",
            InitKind::PcaPercentile => "pca-percentile",
        }
    }

    pub fn is_seeded(self) -> bool {
        !matches!(self, InitKind::PcaPercentile)
    }
}

impl fmt::Display for InitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for InitKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(InitKind::Random),
            "kmeans++" | "kmeanspp" | "k-means++" => Ok(InitKind::KMeansPlusPlus),
            "pca-percentile" | "pca" => Ok(InitKind::PcaPercentile),
            other => Err(Error::InvalidConfig(format!(
                "unknown strategy {other:?} (expected random, kmeans++ or pca-percentile)"
            ))),
        }
    }
}

/// An initialization family plus the seed it needs, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InitStrategy {
    pub kind: InitKind,
    pub seed: Option<u64>,
}

impl InitStrategy {
    pub fn random(seed: u64) -> Self {
        Self {
            kind: InitKind::Random,
            seed: Some(seed),
        }
    }

    pub fn kmeans_pp(seed: u64) -> Self {
        Self {
            kind: InitKind::KMeansPlusPlus,
            seed: Some(seed),
        }
    }

    pub fn pca_percentile() -> Self {
        Self {
            kind: InitKind::PcaPercentile,
            seed: None,
        }
    }

    /// Builds a strategy; the seed is dropped for the deterministic kind.
    pub fn new(kind: InitKind, seed: Option<u64>) -> Result<Self> {
        if kind.is_seeded() && seed.is_none() {
            return Err(Error::InvalidConfig(format!(
                "strategy {kind} requires a seed"
            )));
        }
        Ok(Self {
            kind,
            seed: if kind.is_seeded() { seed } else { None },
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KMeansConfig {
    pub k: usize,
    /// Convergence threshold on the largest centroid displacement.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl KMeansConfig {
    pub const DEFAULT_TOLERANCE: f64 = 1e-4;
    pub const DEFAULT_MAX_ITERATIONS: usize = 300;

    pub fn new(k: usize) -> Self {
        Self {
            k,
            tolerance: Self::DEFAULT_TOLERANCE,
            max_iterations: Self::DEFAULT_MAX_ITERATIONS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::InvalidConfig("k must be at least 1".into()));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig(
                "max_iterations must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusteringResult {
    pub centroids: Vec<Vec<f64>>,
    pub labels: Vec<usize>,
    pub iterations: usize,
    /// Sum of squared distances to the assigned centroid (SSE).
    pub inertia: f64,
    pub converged: bool,
    pub wall_time: Duration,
    /// Inertia measured at each assignment pass, in order.
    pub inertia_history: Vec<f64>,
}

/// Computes starting centroids for `points` with the given strategy.
///
/// For the PCA-percentile strategy, standardization before the projection is
/// controlled by `standardize_before_pca`; the centroids are means of the
/// rows of `points` as given.
pub fn initialize(
    points: &FeatureMatrix,
    strategy: &InitStrategy,
    k: usize,
    standardize_before_pca: bool,
) -> Result<CentroidSet> {
    match strategy.kind {
        InitKind::PcaPercentile => pca_percentile_init(
            points,
            &SeedingConfig::new(k).standardize(standardize_before_pca),
        ),
        kind => {
            let seed = strategy
                .seed
                .ok_or_else(|| Error::InvalidConfig(format!("strategy {kind} requires a seed")))?;
            match kind {
                InitKind::Random => random_init(points, k, seed),
                _ => kmeans_pp_init(points, k, seed),
            }
        }
    }
}

/// Options for [`cluster`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClusterOptions {
    /// Run Lloyd on z-scored features (and standardize before PCA).
    pub standardize: bool,
}

impl Default for ClusterOptions {
    fn default() -> Self {
        Self { standardize: true }
    }
}

/// A full clustering run.
#[derive(Debug, Clone)]
pub struct ClusterRun {
    pub strategy: InitStrategy,
    /// Initial centroids in the clustering space.
    pub initial: CentroidSet,
    /// Final state in the clustering space; `wall_time` covers
    /// initialization plus Lloyd.
    pub result: ClusteringResult,
    /// Present when the run clustered standardized features.
    pub stats: Option<StandardizationStats>,
}

impl ClusterRun {
    /// Final centroids mapped back to the original feature units.
    pub fn original_centroids(&self) -> Vec<Vec<f64>> {
        match &self.stats {
            Some(stats) => self
                .result
                .centroids
                .iter()
                .map(|c| stats.inverse_row(c))
                .collect(),
            None => self.result.centroids.clone(),
        }
    }
}

/// Feature space a run clusters in, plus the statistics needed to map back.
#[derive(Debug, Clone)]
pub struct ClusteringSpace {
    pub points: FeatureMatrix,
    pub stats: Option<StandardizationStats>,
}

impl ClusteringSpace {
    pub fn prepare(original: &FeatureMatrix, options: ClusterOptions) -> Result<Self> {
        if options.standardize {
            let stats = StandardizationStats::fit(original)?;
            Ok(Self {
                points: stats.transform(original)?,
                stats: Some(stats),
            })
        } else {
            Ok(Self {
                points: original.clone(),
                stats: None,
            })
        }
    }
}

/// Initializes and runs Lloyd on `original`.
///
/// With standardization on, Lloyd runs on z-scored features. PCA-percentile
/// seeds are computed from the original rows and mapped into that space;
/// the random baselines pick rows of the clustering space directly. The
/// timed section spans initialization and Lloyd only.
pub fn cluster(
    original: &FeatureMatrix,
    strategy: &InitStrategy,
    config: &KMeansConfig,
    options: ClusterOptions,
) -> Result<ClusterRun> {
    let space = ClusteringSpace::prepare(original, options)?;
    cluster_prepared(original, &space, strategy, config)
}

/// [`cluster`] over an already prepared space, so repeated runs share the
/// preprocessing.
pub fn cluster_prepared(
    original: &FeatureMatrix,
    space: &ClusteringSpace,
    strategy: &InitStrategy,
    config: &KMeansConfig,
) -> Result<ClusterRun> {
    config.validate()?;
    let start = Instant::now();
    let initial = match (strategy.kind, &space.stats) {
        (InitKind::PcaPercentile, Some(stats)) => {
            let seeds = initialize(original, strategy, config.k, true)?;
            CentroidSet::new(
                seeds
                    .centroids
                    .iter()
                    .map(|c| stats.transform_row(c))
                    .collect(),
                seeds.provenance,
            )
        }
        (InitKind::PcaPercentile, None) => initialize(original, strategy, config.k, false)?,
        _ => initialize(&space.points, strategy, config.k, space.stats.is_some())?,
    };
    let mut result = lloyd(&space.points, &initial, config)?;
    result.wall_time = start.elapsed();
    Ok(ClusterRun {
        strategy: *strategy,
        initial,
        result,
        stats: space.stats.clone(),
    })
}
