use std::fs::File;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::matrix::{Dataset, FeatureMatrix};

/// A CSV file as strings, every row with the header's arity.
#[derive(Debug, Clone, PartialEq)]
pub struct RawTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub source_id: String,
}

impl RawTable {
    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    pub fn from_csv_str(text: &str, source_id: &str) -> Result<Self> {
        parse_csv(text.as_bytes(), Path::new(source_id), source_id)
    }
}

/// Reads a comma-separated UTF-8 file whose first row is the header.
pub fn load_csv(path: &Path, source_id: &str) -> Result<RawTable> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
            return Err(Error::FileNotFound(path.to_path_buf()))
        }
        Err(e) => return Err(e.into()),
    };
    parse_csv(file, path, source_id)
}

fn parse_csv<R: std::io::Read>(reader: R, path: &Path, source_id: &str) -> Result<RawTable> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(reader);
    let malformed = |line: u64, message: String| Error::MalformedCsv {
        path: path.to_path_buf(),
        line,
        message,
    };

    let mut header: Option<Vec<String>> = None;
    let mut rows = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            malformed(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let cells: Vec<String> = record.iter().map(str::to_owned).collect();
        match &header {
            None => {
                let mut h = cells;
                if let Some(first) = h.first_mut() {
                    if let Some(stripped) = first.strip_prefix('\u{feff}') {
                        *first = stripped.to_owned();
                    }
                }
                header = Some(h.into_iter().map(|c| c.trim().to_owned()).collect());
            }
            Some(h) => {
                if cells.len() != h.len() {
                    return Err(malformed(
                        line,
                        format!("expected {} fields, found {}", h.len(), cells.len()),
                    ));
                }
                rows.push(cells);
            }
        }
    }
    match header {
        Some(header) if !rows.is_empty() => Ok(RawTable {
            header,
            rows,
            source_id: source_id.to_owned(),
        }),
        _ => Err(Error::EmptyFile(path.to_path_buf())),
    }
}

/// Reads a keyed numeric CSV: first column is the row key, every other
/// column must hold a finite number.
pub fn load_dataset(path: &Path) -> Result<Dataset> {
    let table = load_csv(path, "dataset")?;
    let malformed = |line: usize, message: String| Error::MalformedCsv {
        path: path.to_path_buf(),
        line: line as u64,
        message,
    };
    if table.header.len() < 2 {
        return Err(malformed(
            1,
            "need a key column and at least one feature column".into(),
        ));
    }
    let n_cols = table.header.len() - 1;
    let mut keys = Vec::with_capacity(table.rows.len());
    let mut values = Vec::with_capacity(table.rows.len() * n_cols);
    for (i, row) in table.rows.iter().enumerate() {
        keys.push(row[0].clone());
        for (name, cell) in table.header[1..].iter().zip(&row[1..]) {
            let v = cell
                .trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| {
                    malformed(
                        i + 2,
                        format!("column {name:?}: {cell:?} is not a finite number"),
                    )
                })?;
            values.push(v);
        }
    }
    let matrix = FeatureMatrix::new(keys.len(), n_cols, values, table.header[1..].to_vec())?;
    Ok(Dataset { keys, matrix })
}

/// Writes a keyed numeric CSV readable by [`load_dataset`].
pub fn write_dataset(path: &Path, key_name: &str, dataset: &Dataset) -> Result<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec![key_name.to_owned()];
    header.extend(dataset.matrix.col_names().iter().cloned());
    w.write_record(&header).map_err(csv_io)?;
    for (key, row) in dataset.keys.iter().zip(dataset.matrix.rows()) {
        let mut rec = vec![key.clone()];
        rec.extend(row.iter().map(|v| v.to_string()));
        w.write_record(&rec).map_err(csv_io)?;
    }
    let bytes = w.into_inner().map_err(|e| csv_io(e.into_error().into()))?;
    File::create(path)?.write_all(&bytes)?;
    Ok(())
}

pub(crate) fn csv_io(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}
