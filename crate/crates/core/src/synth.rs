//! Seeded synthetic datasets used as fixtures and benchmarks.

use rand_distr::{Distribution, Normal};

use crate::engine::rng_from_seed;
use crate::matrix::FeatureMatrix;

/// Isotropic Gaussian blobs around fixed centers.
#[derive(Debug, Clone, PartialEq)]
pub struct BlobSpec {
    pub centers: Vec<Vec<f64>>,
    pub sigma: f64,
    pub per_blob: usize,
    pub seed: u64,
}

/// Generated points with their true blob labels.
#[derive(Debug, Clone)]
pub struct Blobs {
    pub matrix: FeatureMatrix,
    pub labels: Vec<usize>,
}

impl Blobs {
    /// Row keys `p000, p001, ...` for CSV export.
    pub fn keys(&self) -> Vec<String> {
        let width = self.labels.len().saturating_sub(1).to_string().len().max(3);
        (0..self.labels.len())
            .map(|i| format!("p{i:0width$}"))
            .collect()
    }
}

/// Four well-separated blobs at (±10, ±10), sigma 0.5, 50 points each.
pub fn separated_blobs_spec() -> BlobSpec {
    BlobSpec {
        centers: vec![
            vec![-10.0, -10.0],
            vec![10.0, -10.0],
            vec![-10.0, 10.0],
            vec![10.0, 10.0],
        ],
        sigma: 0.5,
        per_blob: 50,
        seed: 42,
    }
}

/// Four overlapping blobs on a square of side 8, sigma 2.5, 100 points each.
pub fn overlapping_blobs_spec() -> BlobSpec {
    BlobSpec {
        centers: vec![
            vec![0.0, 0.0],
            vec![8.0, 0.0],
            vec![0.0, 8.0],
            vec![8.0, 8.0],
        ],
        sigma: 2.5,
        per_blob: 100,
        seed: 43,
    }
}

/// Blob by blob in center order; coordinates are drawn from ChaCha8 through
/// a standard normal.
pub fn generate_blobs(spec: &BlobSpec) -> Blobs {
    let dim = spec.centers.first().map_or(0, Vec::len);
    let mut rng = rng_from_seed(spec.seed);
    let normal = Normal::new(0.0, spec.sigma).expect("sigma must be finite and non-negative");
    let mut rows = Vec::with_capacity(spec.centers.len() * spec.per_blob);
    let mut labels = Vec::with_capacity(rows.capacity());
    for (label, center) in spec.centers.iter().enumerate() {
        for _ in 0..spec.per_blob {
            rows.push(center.iter().map(|c| c + normal.sample(&mut rng)).collect());
            labels.push(label);
        }
    }
    let names = (0..dim).map(|j| format!("x{j}")).collect();
    let matrix = FeatureMatrix::from_rows_named(&rows, names).expect("blob rows are finite");
    Blobs { matrix, labels }
}
