use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::path::Path;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::keys::normalize_country_key;
use super::table::RawTable;

/// How one input file contributes to the merge.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SourceSpec {
    /// Matched against the `source_id` of a loaded table (by default the
    /// input file's stem).
    pub id: String,
    /// Column holding the country name.
    pub key: String,
    /// Optional date column; when a country appears more than once, the
    /// latest-dated row wins.
    #[serde(default)]
    pub date: Option<String>,
    pub attributes: Vec<String>,
}

/// Which columns to take from which source, and how to clean them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MergeSpec {
    /// Header of the key column in the merged output.
    #[serde(default = "default_key_name")]
    pub key_name: String,
    pub sources: Vec<SourceSpec>,
    /// Rows with a larger fraction of missing attributes are dropped.
    #[serde(default = "default_max_missing")]
    pub max_missing_fraction: f64,
}

fn default_key_name() -> String {
    "country".to_owned()
}

fn default_max_missing() -> f64 {
    0.4
}

impl MergeSpec {
    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| match e.kind() {
            std::io::ErrorKind::NotFound => Error::FileNotFound(path.to_path_buf()),
            _ => e.into(),
        })?;
        let spec: Self = serde_json::from_str(&text)
            .map_err(|e| Error::InvalidConfig(format!("merge spec {}: {e}", path.display())))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.sources.is_empty() {
            return Err(Error::InvalidConfig("merge spec lists no sources".into()));
        }
        let mut ids = HashSet::new();
        let mut seen = HashSet::new();
        for s in &self.sources {
            if !ids.insert(s.id.as_str()) {
                return Err(Error::InvalidConfig(format!(
                    "source id {:?} appears twice",
                    s.id
                )));
            }
            for a in &s.attributes {
                if !seen.insert(a.as_str()) || *a == self.key_name {
                    return Err(Error::AttributeCollision { column: a.clone() });
                }
            }
        }
        if !(0.0..=1.0).contains(&self.max_missing_fraction) {
            return Err(Error::InvalidConfig(format!(
                "max_missing_fraction must lie in [0, 1], got {}",
                self.max_missing_fraction
            )));
        }
        Ok(())
    }

    /// Output attribute columns, in spec order.
    pub fn attributes(&self) -> Vec<String> {
        self.sources
            .iter()
            .flat_map(|s| s.attributes.iter().cloned())
            .collect()
    }

    pub fn source(&self, id: &str) -> Option<&SourceSpec> {
        self.sources.iter().find(|s| s.id == id)
    }
}

/// Audit trail of a merge and the numeric conversion that follows it.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct MergeReport {
    /// Keys present in every source.
    pub matched: usize,
    /// Per source, its keys that did not make the join.
    pub dropped: BTreeMap<String, Vec<String>>,
    /// Per source, keys seen elsewhere but missing from this source.
    pub absent: BTreeMap<String, Vec<String>>,
    /// Per source, rows discarded in favour of a later-dated row for the same key.
    pub superseded_rows: BTreeMap<String, usize>,
    /// Cells filled by column median, per attribute.
    pub imputed: BTreeMap<String, usize>,
    /// Keys whose rows had too many missing attributes.
    pub dropped_rows: Vec<String>,
    pub constant_columns: Vec<String>,
}

const DATE_FORMATS: &[&str] = &["%Y-%m-%d", "%b %d, %Y", "%B %d, %Y", "%d/%m/%Y", "%d/%m/%y"];

fn parse_date(source_id: &str, raw: &str) -> Result<Option<NaiveDate>> {
    let raw = raw.trim();
    if raw.is_empty() {
        return Ok(None);
    }
    DATE_FORMATS
        .iter()
        .find_map(|f| NaiveDate::parse_from_str(raw, f).ok())
        .map(Some)
        .ok_or_else(|| {
            Error::InvalidConfig(format!("source {source_id:?}: unrecognized date {raw:?}"))
        })
}

fn column(table: &RawTable, name: &str, missing: impl Fn() -> Error) -> Result<usize> {
    table.column_index(name).ok_or_else(missing)
}

/// One row per key after latest-date deduplication.
struct KeyedSource<'a> {
    id: &'a str,
    rows: BTreeMap<String, &'a [String]>,
    attribute_cols: Vec<usize>,
    superseded: usize,
}

fn index_source<'a>(table: &'a RawTable, spec: &'a SourceSpec) -> Result<KeyedSource<'a>> {
    let id = spec.id.as_str();
    let key_col = column(table, &spec.key, || Error::MissingKeyColumn {
        source_id: id.to_owned(),
        column: spec.key.clone(),
    })?;
    let unknown = |c: &str| Error::UnknownColumn {
        source_id: id.to_owned(),
        column: c.to_owned(),
    };
    let date_col = spec
        .date
        .as_deref()
        .map(|d| column(table, d, || unknown(d)))
        .transpose()?;
    let attribute_cols = spec
        .attributes
        .iter()
        .map(|a| column(table, a, || unknown(a)))
        .collect::<Result<Vec<_>>>()?;

    let mut rows: BTreeMap<String, (Option<NaiveDate>, &[String])> = BTreeMap::new();
    let mut superseded = 0;
    for row in &table.rows {
        let key = normalize_country_key(&row[key_col])?;
        let date = date_col
            .map(|c| parse_date(id, &row[c]))
            .transpose()?
            .flatten();
        match rows.get(&key) {
            None => {
                rows.insert(key, (date, row));
            }
            Some((prev, _)) if date_col.is_some() && date != *prev => {
                superseded += 1;
                if date > *prev {
                    rows.insert(key, (date, row));
                }
            }
            Some(_) => {
                return Err(Error::DuplicateKeyWithinSource {
                    source_id: id.to_owned(),
                    key,
                })
            }
        }
    }
    Ok(KeyedSource {
        id,
        rows: rows.into_iter().map(|(k, (_, r))| (k, r)).collect(),
        attribute_cols,
        superseded,
    })
}

/// Inner join of the tables on normalized country keys.
///
/// The output has the spec's key column followed by the selected attributes
/// in spec order, one row per key present in every source, sorted by key.
/// Source order in `tables` does not affect the result.
pub fn merge_tables(tables: &[RawTable], spec: &MergeSpec) -> Result<(RawTable, MergeReport)> {
    spec.validate()?;
    for t in tables {
        if spec.source(&t.source_id).is_none() {
            return Err(Error::UnmatchedSource(t.source_id.clone()));
        }
    }
    let mut keyed = Vec::with_capacity(spec.sources.len());
    for s in &spec.sources {
        let matching: Vec<&RawTable> = tables.iter().filter(|t| t.source_id == s.id).collect();
        match matching.as_slice() {
            [t] => keyed.push(index_source(t, s)?),
            [] => {
                return Err(Error::InvalidConfig(format!(
                    "no input supplied for merge source {:?}",
                    s.id
                )))
            }
            _ => {
                return Err(Error::InvalidConfig(format!(
                    "more than one input supplied for merge source {:?}",
                    s.id
                )))
            }
        }
    }

    let union: BTreeSet<&String> = keyed.iter().flat_map(|k| k.rows.keys()).collect();
    let matched: Vec<&String> = union
        .iter()
        .copied()
        .filter(|key| keyed.iter().all(|k| k.rows.contains_key(*key)))
        .collect();
    let matched_set: HashSet<&String> = matched.iter().copied().collect();

    let mut report = MergeReport {
        matched: matched.len(),
        ..MergeReport::default()
    };
    for k in &keyed {
        report.dropped.insert(
            k.id.to_owned(),
            k.rows
                .keys()
                .filter(|key| !matched_set.contains(key))
                .cloned()
                .collect(),
        );
        report.absent.insert(
            k.id.to_owned(),
            union
                .iter()
                .filter(|key| !k.rows.contains_key(**key))
                .map(|s| (*s).clone())
                .collect(),
        );
        report.superseded_rows.insert(k.id.to_owned(), k.superseded);
    }

    let mut header = vec![spec.key_name.clone()];
    header.extend(spec.attributes());
    let rows = matched
        .iter()
        .map(|key| {
            let mut out = vec![(*key).clone()];
            for k in &keyed {
                let row = k.rows[*key];
                out.extend(k.attribute_cols.iter().map(|&c| row[c].clone()));
            }
            out
        })
        .collect();
    Ok((
        RawTable {
            header,
            rows,
            source_id: "merged".to_owned(),
        },
        report,
    ))
}
