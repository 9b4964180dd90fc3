use crate::error::{Error, Result};
use crate::matrix::{Dataset, FeatureMatrix};

use super::merge::{MergeReport, MergeSpec};
use super::table::RawTable;

const MISSING_TOKENS: &[&str] = &["", "na", "n/a", "nan", "null", "none", "-", ".."];

fn parse_cell(cell: &str) -> Option<f64> {
    let t = cell.trim();
    if MISSING_TOKENS.iter().any(|m| t.eq_ignore_ascii_case(m)) {
        return None;
    }
    t.parse::<f64>().ok().filter(|v| v.is_finite())
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    }
}

/// Converts a merged table (key column first) into a numeric dataset.
///
/// Cells parse as numbers; ordinal policy codes pass through unchanged.
/// Missing or unparseable cells are counted, rows missing more than the
/// spec's fraction of attributes are dropped, and the remaining gaps are
/// filled with the column median of the kept rows.
pub fn to_feature_matrix(
    table: &RawTable,
    spec: &MergeSpec,
    report: &mut MergeReport,
) -> Result<Dataset> {
    let names: Vec<String> = table.header.iter().skip(1).cloned().collect();
    let p = names.len();
    if p == 0 {
        return Err(Error::InvalidConfig(
            "merged table has no attribute columns".into(),
        ));
    }

    let mut keys = Vec::new();
    let mut cells: Vec<Vec<Option<f64>>> = Vec::new();
    for row in &table.rows {
        let parsed: Vec<Option<f64>> = row[1..].iter().map(|c| parse_cell(c)).collect();
        let missing = parsed.iter().filter(|v| v.is_none()).count();
        if missing as f64 > spec.max_missing_fraction * p as f64 {
            report.dropped_rows.push(row[0].clone());
            continue;
        }
        keys.push(row[0].clone());
        cells.push(parsed);
    }

    let mut medians = Vec::with_capacity(p);
    for (j, name) in names.iter().enumerate() {
        let mut present: Vec<f64> = cells.iter().filter_map(|r| r[j]).collect();
        let n_missing = cells.len() - present.len();
        report.imputed.insert(name.clone(), n_missing);
        if present.is_empty() {
            if cells.is_empty() {
                medians.push(0.0);
                continue;
            }
            return Err(Error::AllMissingColumn(name.clone()));
        }
        medians.push(median(&mut present));
    }

    let values: Vec<f64> = cells
        .iter()
        .flat_map(|r| r.iter().zip(&medians).map(|(v, m)| v.unwrap_or(*m)))
        .collect();
    let matrix = FeatureMatrix::new(keys.len(), p, values, names)?;

    report.constant_columns = (0..p)
        .filter(|&j| {
            let first = matrix.rows().next().map(|r| r[j]);
            first.is_some_and(|f| matrix.rows().all(|r| r[j] == f))
        })
        .map(|j| matrix.col_names()[j].clone())
        .collect();
    Ok(Dataset { keys, matrix })
}
