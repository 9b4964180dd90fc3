use std::time::Instant;

use crate::error::{Error, Result};
use crate::matrix::FeatureMatrix;
use crate::seeding::CentroidSet;

use super::{ClusteringResult, KMeansConfig};

#[inline]
pub(crate) fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn check_dims(points: &FeatureMatrix, centroids: &[Vec<f64>]) -> Result<()> {
    if let Some(bad) = centroids.iter().find(|c| c.len() != points.n_cols()) {
        return Err(Error::DimensionMismatch {
            expected: points.n_cols(),
            found: bad.len(),
        });
    }
    Ok(())
}

fn nearest(row: &[f64], centroids: &[Vec<f64>]) -> usize {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (j, c) in centroids.iter().enumerate() {
        let d = squared_distance(row, c);
        // Strict comparison keeps the lowest index on ties.
        if d < best_d {
            best_d = d;
            best = j;
        }
    }
    best
}

/// Labels each row with its nearest centroid (squared Euclidean distance,
/// ties to the lowest index).
pub fn assign(points: &FeatureMatrix, centroids: &CentroidSet) -> Result<Vec<usize>> {
    check_dims(points, &centroids.centroids)?;
    if centroids.k() == 0 {
        return Err(Error::InvalidConfig("no centroids to assign to".into()));
    }
    Ok(assign_raw(points, &centroids.centroids))
}

fn assign_raw(points: &FeatureMatrix, centroids: &[Vec<f64>]) -> Vec<usize> {
    points.rows().map(|r| nearest(r, centroids)).collect()
}

/// Recomputes each centroid as the mean of its rows. A cluster that lost all
/// of its rows keeps its previous centroid.
pub fn update_centroids(
    points: &FeatureMatrix,
    labels: &[usize],
    k: usize,
    previous: &CentroidSet,
) -> Result<CentroidSet> {
    if labels.len() != points.n_rows() {
        return Err(Error::DimensionMismatch {
            expected: points.n_rows(),
            found: labels.len(),
        });
    }
    if previous.k() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            found: previous.k(),
        });
    }
    check_dims(points, &previous.centroids)?;
    if let Some(&bad) = labels.iter().find(|&&l| l >= k) {
        return Err(Error::InvalidConfig(format!(
            "label {bad} out of range for k = {k}"
        )));
    }
    Ok(CentroidSet::new(
        update_raw(points, labels, &previous.centroids),
        previous.provenance,
    ))
}

fn update_raw(points: &FeatureMatrix, labels: &[usize], previous: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let k = previous.len();
    let p = points.n_cols();
    let mut sums = vec![vec![0.0; p]; k];
    let mut counts = vec![0usize; k];
    for (row, &l) in points.rows().zip(labels) {
        counts[l] += 1;
        for (s, v) in sums[l].iter_mut().zip(row) {
            *s += v;
        }
    }
    sums.into_iter()
        .zip(counts)
        .zip(previous)
        .map(|((mut s, n), prev)| {
            if n == 0 {
                prev.clone()
            } else {
                s.iter_mut().for_each(|v| *v /= n as f64);
                s
            }
        })
        .collect()
}

/// Sum of squared distances from each row to its assigned centroid.
pub fn inertia(points: &FeatureMatrix, centroids: &CentroidSet, labels: &[usize]) -> Result<f64> {
    check_dims(points, &centroids.centroids)?;
    if labels.len() != points.n_rows() {
        return Err(Error::DimensionMismatch {
            expected: points.n_rows(),
            found: labels.len(),
        });
    }
    if let Some(&bad) = labels.iter().find(|&&l| l >= centroids.k()) {
        return Err(Error::InvalidConfig(format!(
            "label {bad} out of range for k = {}",
            centroids.k()
        )));
    }
    Ok(inertia_raw(points, &centroids.centroids, labels))
}

fn inertia_raw(points: &FeatureMatrix, centroids: &[Vec<f64>], labels: &[usize]) -> f64 {
    points
        .rows()
        .zip(labels)
        .map(|(r, &l)| squared_distance(r, &centroids[l]))
        .sum()
}

/// Lloyd's algorithm from the given starting centroids.
///
/// One iteration is one assignment pass plus one update pass; the pass that
/// detects convergence is counted. Iteration stops once no centroid moves
/// farther than `config.tolerance`, or after `config.max_iterations` passes.
/// The returned labels and inertia come from a final assignment against the
/// final centroids. `wall_time` covers this call only.
pub fn lloyd(
    points: &FeatureMatrix,
    initial: &CentroidSet,
    config: &KMeansConfig,
) -> Result<ClusteringResult> {
    config.validate()?;
    if initial.k() != config.k {
        return Err(Error::InvalidConfig(format!(
            "initial centroid count {} does not match k = {}",
            initial.k(),
            config.k
        )));
    }
    check_dims(points, &initial.centroids)?;
    if points.n_rows() == 0 {
        return Err(Error::EmptyMatrix {
            rows: 0,
            required: 1,
        });
    }

    let start = Instant::now();
    let mut centroids = initial.centroids.clone();
    let mut iterations = 0;
    let mut converged = false;
    let mut inertia_history = Vec::new();

    while iterations < config.max_iterations {
        let labels = assign_raw(points, &centroids);
        inertia_history.push(inertia_raw(points, &centroids, &labels));
        let next = update_raw(points, &labels, &centroids);
        let shift = centroids
            .iter()
            .zip(&next)
            .map(|(a, b)| squared_distance(a, b).sqrt())
            .fold(0.0, f64::max);
        centroids = next;
        iterations += 1;
        if shift <= config.tolerance {
            converged = true;
            break;
        }
    }

    let labels = assign_raw(points, &centroids);
    let inertia = inertia_raw(points, &centroids, &labels);
    Ok(ClusteringResult {
        centroids,
        labels,
        iterations,
        inertia,
        converged,
        wall_time: start.elapsed(),
        inertia_history,
    })
}
