//! Seeded baseline initializers. Both use ChaCha8 seeded from a `u64`, whose
//! output stream is fixed by its algorithm and identical on every platform.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::FeatureMatrix;
use crate::seeding::{CentroidSet, Provenance};

use super::lloyd::squared_distance;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check_rows(points: &FeatureMatrix, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidConfig("k must be at least 1".into()));
    }
    if points.n_rows() < k {
        return Err(Error::InsufficientRows {
            rows: points.n_rows(),
            k,
        });
    }
    Ok(())
}

/// k distinct rows drawn uniformly without replacement.
pub fn random_init(points: &FeatureMatrix, k: usize, seed: u64) -> Result<CentroidSet> {
    check_rows(points, k)?;
    let mut rng = rng_from_seed(seed);
    let picks = rand::seq::index::sample(&mut rng, points.n_rows(), k);
    let centroids = picks.iter().map(|i| points.row(i).to_vec()).collect();
    Ok(CentroidSet::new(centroids, Provenance::Random))
}

/// k-means++ seeding: a uniform first pick, then each next row with
/// probability proportional to its squared distance from the nearest row
/// already chosen.
pub fn kmeans_pp_init(points: &FeatureMatrix, k: usize, seed: u64) -> Result<CentroidSet> {
    check_rows(points, k)?;
    let n = points.n_rows();
    let mut rng = rng_from_seed(seed);
    let mut chosen = Vec::with_capacity(k);
    let mut taken = vec![false; n];

    let first = rng.random_range(0..n);
    chosen.push(first);
    taken[first] = true;
    let mut d2: Vec<f64> = points
        .rows()
        .map(|r| squared_distance(r, points.row(first)))
        .collect();

    while chosen.len() < k {
        let total: f64 = d2.iter().sum();
        let next = if total > 0.0 && total.is_finite() {
            WeightedIndex::new(&d2)
                .map_err(|e| Error::DegenerateData(format!("k-means++ weights: {e}")))?
                .sample(&mut rng)
        } else {
            // Every remaining row coincides with a chosen one.
            let free: Vec<usize> = (0..n).filter(|&i| !taken[i]).collect();
            free[rng.random_range(0..free.len())]
        };
        chosen.push(next);
        taken[next] = true;
        let c = points.row(next);
        for (d, r) in d2.iter_mut().zip(points.rows()) {
            *d = d.min(squared_distance(r, c));
        }
    }

    let centroids = chosen.iter().map(|&i| points.row(i).to_vec()).collect();
    Ok(CentroidSet::new(centroids, Provenance::KMeansPlusPlus))
}
