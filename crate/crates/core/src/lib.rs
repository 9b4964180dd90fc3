//! Deterministic PCA-percentile initialization for k-means clustering,
//! with random and k-means++ baselines, a tabular merge pipeline and a
//! benchmark harness comparing iteration counts and run times.

pub mod bench;
pub mod engine;
pub mod error;
pub mod matrix;
pub mod numeric;
pub mod pipeline;
pub mod seeding;
pub mod synth;

pub use engine::{
    cluster, ClusterOptions, ClusterRun, ClusteringResult, InitKind, InitStrategy, KMeansConfig,
};
pub use error::{Error, Result};
pub use matrix::{Dataset, FeatureMatrix};
pub use seeding::{pca_percentile_init, CentroidSet, SeedingConfig};
