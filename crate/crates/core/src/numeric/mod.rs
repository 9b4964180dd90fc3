//! Dense numerics: standardization, PCA and the percentile rank rule.

mod eigen;
mod pca;
mod percentile;
mod standardize;

pub use eigen::{jacobi_eigen, SymmetricEigen};
pub use pca::{normalize_sign, pca_fit, pca_transform, sample_covariance, PcaModel};
pub use percentile::{percentile_value, PercentileQuery};
pub use standardize::{standardize, StandardizationStats};
