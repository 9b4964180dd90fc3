use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::FeatureMatrix;

use super::{cluster_prepared, ClusterOptions, ClusteringSpace, InitStrategy, KMeansConfig};

/// One point of the inertia-vs-k curve. `inertia` is `None` when the
/// strategy could not produce k clusters; `note` then says why.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ElbowPoint {
    pub k: usize,
    pub inertia: Option<f64>,
    pub iterations: Option<usize>,
    pub note: Option<String>,
}

/// Runs a full clustering for every k in `k_min..=k_max`.
///
/// Seeding failures that only mean "this k does not fit the data" (empty
/// percentile slices, no spread to split on) mark that k unavailable; other
/// errors abort the sweep.
pub fn elbow_sweep(
    points: &FeatureMatrix,
    k_min: usize,
    k_max: usize,
    strategy: &InitStrategy,
    config: &KMeansConfig,
    options: ClusterOptions,
) -> Result<Vec<ElbowPoint>> {
    if k_min == 0 || k_min > k_max {
        return Err(Error::InvalidConfig(format!(
            "invalid k range {k_min}..={k_max}"
        )));
    }
    if k_max > points.n_rows() {
        return Err(Error::InsufficientRows {
            rows: points.n_rows(),
            k: k_max,
        });
    }
    let space = ClusteringSpace::prepare(points, options)?;
    (k_min..=k_max)
        .map(|k| {
            let cfg = KMeansConfig { k, ..*config };
            match cluster_prepared(points, &space, strategy, &cfg) {
                Ok(run) => Ok(ElbowPoint {
                    k,
                    inertia: Some(run.result.inertia),
                    iterations: Some(run.result.iterations),
                    note: None,
                }),
                Err(e @ (Error::EmptyGroup { .. } | Error::DegenerateData(_))) => Ok(ElbowPoint {
                    k,
                    inertia: None,
                    iterations: None,
                    note: Some(e.to_string()),
                }),
                Err(e) => Err(e),
            }
        })
        .collect()
}
