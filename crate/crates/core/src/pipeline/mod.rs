//! CSV ingestion, country-key normalization, inner-join merge and numeric
//! conversion with median imputation.

mod covid;
mod features;
mod keys;
mod merge;
mod table;

use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::error::Result;
use crate::matrix::Dataset;

pub use covid::covid_default_spec;
pub use features::to_feature_matrix;
pub use keys::{normalize_country_key, COUNTRY_ALIASES};
pub use merge::{merge_tables, MergeReport, MergeSpec, SourceSpec};
pub(crate) use table::csv_io;
pub use table::{load_csv, load_dataset, write_dataset, RawTable};

/// An input file and the merge source it feeds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceInput {
    pub id: String,
    pub path: PathBuf,
}

impl SourceInput {
    /// Parses `id=path`, or a bare path whose file stem becomes the id.
    pub fn parse(arg: &str) -> Self {
        match arg.split_once('=') {
            Some((id, path)) if !id.is_empty() && !id.contains(['/', '\\']) => Self {
                id: id.to_owned(),
                path: PathBuf::from(path),
            },
            _ => {
                let path = PathBuf::from(arg);
                let id = Path::new(arg)
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default();
                Self { id, path }
            }
        }
    }
}

/// Loads every input (concurrently), merges, and converts to numbers.
pub fn merge_files(inputs: &[SourceInput], spec: &MergeSpec) -> Result<(Dataset, MergeReport)> {
    spec.validate()?;
    let tables = inputs
        .par_iter()
        .map(|i| load_csv(&i.path, &i.id))
        .collect::<Result<Vec<_>>>()?;
    let (merged, mut report) = merge_tables(&tables, spec)?;
    let dataset = to_feature_matrix(&merged, spec, &mut report)?;
    Ok((dataset, report))
}
