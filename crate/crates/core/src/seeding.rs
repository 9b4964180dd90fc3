//! Deterministic k-means seeding by percentile-splitting rows along the first
//! principal component and averaging each slice in the original feature space.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::FeatureMatrix;
use crate::numeric::{pca_fit, pca_transform, percentile_value, standardize, PcaModel};

/// Number of principal components fitted during seeding. Only the first one
/// drives the split; the second is kept for previews.
pub const PREVIEW_COMPONENTS: usize = 2;

/// Where a set of centroids came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    PcaPercentile,
    Random,
    KMeansPlusPlus,
    Lloyd,
    Given,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::PcaPercentile => "pca-percentile",
            Provenance::Random => "random",
            Provenance::KMeansPlusPlus => "kmeans++",
            Provenance::Lloyd => "lloyd",
            Provenance::Given => "given",
        })
    }
}

/// Ordered list of `k` centroid vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct CentroidSet {
    pub centroids: Vec<Vec<f64>>,
    pub provenance: Provenance,
}

impl CentroidSet {
    pub fn new(centroids: Vec<Vec<f64>>, provenance: Provenance) -> Self {
        Self {
            centroids,
            provenance,
        }
    }

    pub fn k(&self) -> usize {
        self.centroids.len()
    }

    pub fn dim(&self) -> usize {
        self.centroids.first().map_or(0, Vec::len)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeedingConfig {
    pub k: usize,
    /// `k - 1` strictly increasing percentiles in (0, 100).
    pub cut_percentiles: Vec<f64>,
    pub standardize_before_pca: bool,
}

impl SeedingConfig {
    /// Equal-sized slices: cuts at `100 * i / k` for `i = 1..k`.
    pub fn new(k: usize) -> Self {
        Self {
            k,
            cut_percentiles: default_cuts(k),
            standardize_before_pca: true,
        }
    }

    pub fn with_cuts(k: usize, cut_percentiles: Vec<f64>) -> Result<Self> {
        let cfg = Self {
            k,
            cut_percentiles,
            standardize_before_pca: true,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn standardize(mut self, on: bool) -> Self {
        self.standardize_before_pca = on;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::InvalidConfig("k must be at least 1".into()));
        }
        if self.cut_percentiles.len() != self.k - 1 {
            return Err(Error::InvalidConfig(format!(
                "k = {} needs {} cut percentiles, got {}",
                self.k,
                self.k - 1,
                self.cut_percentiles.len()
            )));
        }
        if self
            .cut_percentiles
            .iter()
            .any(|p| !(*p > 0.0 && *p < 100.0))
        {
            return Err(Error::InvalidConfig(
                "cut percentiles must lie strictly between 0 and 100".into(),
            ));
        }
        if self.cut_percentiles.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidConfig(
                "cut percentiles must be strictly increasing".into(),
            ));
        }
        Ok(())
    }
}

pub fn default_cuts(k: usize) -> Vec<f64> {
    (1..k).map(|i| 100.0 * i as f64 / k as f64).collect()
}

/// Row-to-group assignment produced by the percentile split.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitAssignment {
    pub groups: Vec<usize>,
    pub sizes: Vec<usize>,
    pub cut_values: Vec<f64>,
}

impl SplitAssignment {
    pub fn k(&self) -> usize {
        self.sizes.len()
    }

    pub fn members(&self, group: usize) -> Vec<usize> {
        self.groups
            .iter()
            .enumerate()
            .filter_map(|(i, g)| (*g == group).then_some(i))
            .collect()
    }
}

/// Buckets scores by the percentile cut values.
///
/// A row's group is the number of cut values strictly below its score, so a
/// score equal to a cut lands in the lower group and the top group takes
/// everything above the last cut.
pub fn split_on_first_component(scores: &[f64], config: &SeedingConfig) -> Result<SplitAssignment> {
    config.validate()?;
    let k = config.k;
    if scores.len() < k {
        return Err(Error::InsufficientRows {
            rows: scores.len(),
            k,
        });
    }
    let mut sorted = scores.to_vec();
    sorted.sort_by(f64::total_cmp);
    let cut_values = config
        .cut_percentiles
        .iter()
        .map(|&p| percentile_value(&sorted, p))
        .collect::<Result<Vec<_>>>()?;

    let groups: Vec<usize> = scores
        .iter()
        .map(|s| cut_values.partition_point(|c| c < s))
        .collect();
    let mut sizes = vec![0; k];
    for &g in &groups {
        sizes[g] += 1;
    }
    if let Some(group) = sizes.iter().position(|&n| n == 0) {
        return Err(Error::EmptyGroup { group, k });
    }
    Ok(SplitAssignment {
        groups,
        sizes,
        cut_values,
    })
}

/// Column-wise mean of each group's original rows, in group order.
pub fn seed_centroids(
    original: &FeatureMatrix,
    assignment: &SplitAssignment,
) -> Result<CentroidSet> {
    if assignment.groups.len() != original.n_rows() {
        return Err(Error::DimensionMismatch {
            expected: original.n_rows(),
            found: assignment.groups.len(),
        });
    }
    let k = assignment.k();
    let p = original.n_cols();
    let mut sums = vec![vec![0.0; p]; k];
    let mut counts = vec![0usize; k];
    for (row, &g) in original.rows().zip(&assignment.groups) {
        if g >= k {
            return Err(Error::InvalidConfig(format!(
                "group index {g} out of range for k = {k}"
            )));
        }
        counts[g] += 1;
        for (s, v) in sums[g].iter_mut().zip(row) {
            *s += v;
        }
    }
    for (g, (sum, &n)) in sums.iter_mut().zip(&counts).enumerate() {
        if n == 0 {
            return Err(Error::EmptyGroup { group: g, k });
        }
        sum.iter_mut().for_each(|s| *s /= n as f64);
    }
    Ok(CentroidSet::new(sums, Provenance::PcaPercentile))
}

/// Everything the seeding pipeline computes, for previews and plots.
#[derive(Debug, Clone)]
pub struct SeedPreview {
    /// `None` when `k = 1`, which needs no projection.
    pub model: Option<PcaModel>,
    /// Per-row projection scores (`n_rows x n_components`).
    pub scores: Option<FeatureMatrix>,
    pub assignment: SplitAssignment,
    pub centroids: CentroidSet,
}

pub fn seed_preview(original: &FeatureMatrix, config: &SeedingConfig) -> Result<SeedPreview> {
    config.validate()?;
    let k = config.k;
    let n = original.n_rows();
    if n < k || n == 0 {
        return Err(Error::InsufficientRows { rows: n, k });
    }
    if k == 1 {
        let assignment = SplitAssignment {
            groups: vec![0; n],
            sizes: vec![n],
            cut_values: Vec::new(),
        };
        let centroids = seed_centroids(original, &assignment)?;
        return Ok(SeedPreview {
            model: None,
            scores: None,
            assignment,
            centroids,
        });
    }

    let projected_space = if config.standardize_before_pca {
        standardize(original)?.0
    } else {
        original.clone()
    };
    let n_components = PREVIEW_COMPONENTS.min(original.n_cols()).min(n - 1);
    let model = pca_fit(&projected_space, n_components)?;
    if model.total_variance <= 0.0 || model.explained_variance[0] <= 1e-12 * model.total_variance {
        return Err(Error::DegenerateData(
            "first principal component carries no variance; rows cannot be split".into(),
        ));
    }
    let scores = pca_transform(&model, &projected_space)?;
    let first = scores.column(0);
    let assignment = split_on_first_component(&first, config)?;
    let centroids = seed_centroids(original, &assignment)?;
    Ok(SeedPreview {
        model: Some(model),
        scores: Some(scores),
        assignment,
        centroids,
    })
}

/// Initial centroids for `config.k` clusters: standardize (optional), project
/// onto the principal components, split on the first component at the cut
/// percentiles, then average each split over the untouched original rows.
pub fn pca_percentile_init(
    original: &FeatureMatrix,
    config: &SeedingConfig,
) -> Result<CentroidSet> {
    seed_preview(original, config).map(|p| p.centroids)
}
