use crate::error::{Error, Result};
use crate::matrix::FeatureMatrix;

/// Per-column z-score parameters (population standard deviation).
#[derive(Debug, Clone, PartialEq)]
pub struct StandardizationStats {
    pub means: Vec<f64>,
    pub stddevs: Vec<f64>,
    /// Columns whose spread is zero; they map to 0 and are restored to their mean.
    pub constant: Vec<bool>,
}

impl StandardizationStats {
    pub fn fit(m: &FeatureMatrix) -> Result<Self> {
        if m.n_rows() < 2 {
            return Err(Error::EmptyMatrix {
                rows: m.n_rows(),
                required: 2,
            });
        }
        let means = m.column_means();
        let n = m.n_rows() as f64;
        let mut sq = vec![0.0; m.n_cols()];
        for row in m.rows() {
            for ((acc, v), mu) in sq.iter_mut().zip(row).zip(&means) {
                let d = v - mu;
                *acc += d * d;
            }
        }
        let stddevs: Vec<f64> = sq.iter().map(|s| (s / n).sqrt()).collect();
        let constant = stddevs
            .iter()
            .zip(&means)
            .map(|(sd, mu)| *sd <= 1e-12 * mu.abs().max(1.0))
            .collect();
        Ok(Self {
            means,
            stddevs,
            constant,
        })
    }

    pub fn n_cols(&self) -> usize {
        self.means.len()
    }

    pub fn transform_row(&self, row: &[f64]) -> Vec<f64> {
        row.iter()
            .enumerate()
            .map(|(j, v)| {
                if self.constant[j] {
                    0.0
                } else {
                    (v - self.means[j]) / self.stddevs[j]
                }
            })
            .collect()
    }

    pub fn inverse_row(&self, row: &[f64]) -> Vec<f64> {
        row.iter()
            .enumerate()
            .map(|(j, z)| {
                if self.constant[j] {
                    self.means[j]
                } else {
                    z * self.stddevs[j] + self.means[j]
                }
            })
            .collect()
    }

    pub fn transform(&self, m: &FeatureMatrix) -> Result<FeatureMatrix> {
        if m.n_cols() != self.n_cols() {
            return Err(Error::DimensionMismatch {
                expected: self.n_cols(),
                found: m.n_cols(),
            });
        }
        let values = m.rows().flat_map(|r| self.transform_row(r)).collect();
        Ok(FeatureMatrix::from_parts_unchecked(
            m.n_rows(),
            m.n_cols(),
            values,
            m.col_names().to_vec(),
        ))
    }
}

/// Z-scores every column; constant columns become all-zero.
pub fn standardize(m: &FeatureMatrix) -> Result<(FeatureMatrix, StandardizationStats)> {
    let stats = StandardizationStats::fit(m)?;
    let out = stats.transform(m)?;
    Ok((out, stats))
}
