use crate::error::{Error, Result};
use crate::matrix::FeatureMatrix;

use super::eigen::jacobi_eigen;

/// Eigenvalues at or below this fraction of the covariance trace are treated
/// as zero when deciding degeneracy.
const NEGLIGIBLE_EIGENVALUE: f64 = 1e-12;

/// Fitted principal components.
///
/// Each component is a unit vector whose entry of largest magnitude is
/// positive, which pins the sign so projections are reproducible.
#[derive(Debug, Clone, PartialEq)]
pub struct PcaModel {
    pub components: Vec<Vec<f64>>,
    pub explained_variance: Vec<f64>,
    pub center: Vec<f64>,
    /// Trace of the covariance, i.e. the variance summed over all directions.
    pub total_variance: f64,
    /// Set when the covariance has fewer non-negligible eigenvalues than
    /// requested components.
    pub degenerate: bool,
}

impl PcaModel {
    pub fn n_components(&self) -> usize {
        self.components.len()
    }

    pub fn project_row(&self, row: &[f64]) -> Vec<f64> {
        self.components
            .iter()
            .map(|c| {
                c.iter()
                    .zip(row.iter().zip(&self.center))
                    .map(|(w, (x, mu))| w * (x - mu))
                    .sum()
            })
            .collect()
    }
}

/// Sample covariance (divisor n - 1) of the column-centered matrix, row-major.
pub fn sample_covariance(m: &FeatureMatrix, center: &[f64]) -> Vec<f64> {
    let p = m.n_cols();
    let mut cov = vec![0.0; p * p];
    let mut centered = vec![0.0; p];
    for row in m.rows() {
        for (c, (x, mu)) in centered.iter_mut().zip(row.iter().zip(center)) {
            *c = x - mu;
        }
        for i in 0..p {
            let ci = centered[i];
            for j in i..p {
                cov[i * p + j] += ci * centered[j];
            }
        }
    }
    let denom = (m.n_rows() - 1) as f64;
    for i in 0..p {
        for j in i..p {
            let v = cov[i * p + j] / denom;
            cov[i * p + j] = v;
            cov[j * p + i] = v;
        }
    }
    cov
}

/// Flips `v` so its largest-magnitude entry (first one on ties) is positive.
pub fn normalize_sign(v: &mut [f64]) {
    let mut best = 0;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > v[best].abs() {
            best = i;
        }
    }
    if v.get(best).is_some_and(|x| *x < 0.0) {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

pub fn pca_fit(m: &FeatureMatrix, n_components: usize) -> Result<PcaModel> {
    if n_components == 0 || m.n_cols() < n_components {
        return Err(Error::InvalidConfig(format!(
            "cannot fit {n_components} components to {} columns",
            m.n_cols()
        )));
    }
    if m.n_rows() < n_components + 1 {
        return Err(Error::EmptyMatrix {
            rows: m.n_rows(),
            required: n_components + 1,
        });
    }
    let center = m.column_means();
    let p = m.n_cols();
    let cov = sample_covariance(m, &center);
    let trace: f64 = (0..p).map(|i| cov[i * p + i]).sum();
    let eig = jacobi_eigen(&cov, p);

    let mut components = Vec::with_capacity(n_components);
    let mut explained_variance = Vec::with_capacity(n_components);
    let mut degenerate = false;
    for (value, vector) in eig.values.iter().zip(&eig.vectors).take(n_components) {
        if trace <= 0.0 || *value <= NEGLIGIBLE_EIGENVALUE * trace {
            degenerate = true;
        }
        let mut c = vector.clone();
        normalize_sign(&mut c);
        components.push(c);
        explained_variance.push(value.max(0.0));
    }
    Ok(PcaModel {
        components,
        explained_variance,
        center,
        total_variance: trace,
        degenerate,
    })
}

/// Centers `m` on the model's mean and projects it onto the components.
pub fn pca_transform(model: &PcaModel, m: &FeatureMatrix) -> Result<FeatureMatrix> {
    if m.n_cols() != model.center.len() {
        return Err(Error::DimensionMismatch {
            expected: model.center.len(),
            found: m.n_cols(),
        });
    }
    let k = model.n_components();
    let values = m.rows().flat_map(|r| model.project_row(r)).collect();
    let names = (1..=k).map(|i| format!("pc{i}")).collect();
    Ok(FeatureMatrix::from_parts_unchecked(
        m.n_rows(),
        k,
        values,
        names,
    ))
}
