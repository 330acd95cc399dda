//! CSV dataset loading: one row per sample, feature columns first, target
//! value in the last column.

use std::path::Path;

use it2fls::Dataset;

#[derive(Debug, thiserror::Error)]
pub enum DatasetError {
    #[error("{0}")]
    Csv(#[from] csv::Error),
    #[error("row {row}, column {column}: invalid number '{value}'")]
    BadNumber {
        row: usize,
        column: usize,
        value: String,
    },
    #[error("row {row}: expected at least two columns, found {found}")]
    TooFewColumns { row: usize, found: usize },
    #[error("{0}")]
    Shape(it2fls::Error),
}

/// Load a dataset from `path`. `has_header` skips the first line.
pub fn load_dataset(path: &Path, has_header: bool) -> Result<Dataset, DatasetError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(has_header)
        .trim(csv::Trim::All)
        .from_path(path)?;

    let offset = if has_header { 2 } else { 1 };
    let mut rows = Vec::new();
    for (index, record) in reader.records().enumerate() {
        let record = record?;
        let row = index + offset;
        if record.len() < 2 {
            return Err(DatasetError::TooFewColumns {
                row,
                found: record.len(),
            });
        }
        let mut values = Vec::with_capacity(record.len());
        for (column, field) in record.iter().enumerate() {
            let value: f64 = field.parse().map_err(|_| DatasetError::BadNumber {
                row,
                column: column + 1,
                value: field.to_string(),
            })?;
            values.push(value);
        }
        let target = values.pop().expect("at least two columns");
        rows.push((values, target));
    }

    Dataset::new(rows).map_err(DatasetError::Shape)
}
