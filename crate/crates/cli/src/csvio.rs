//! CSV ingestion and emission.
//!
//! One header row, comma separation, UTF-8, decimal-point reals. All feature
//! cells must parse as finite 64-bit floats; the target column is either a
//! finite real (regression) or an arbitrary label string (classification),
//! with labels mapped to dense indices in first-appearance order. Values are
//! written back with the shortest round-trip float formatting, so a
//! load/write/load cycle reproduces the same bits.

use std::path::Path;

use infosel_core::data::{Dataset, Target};

use crate::error::CliError;

/// Task request for [`load_csv`]; `bound: None` means "use the empirical
/// `max |y|`".
#[derive(Debug, Clone, PartialEq)]
pub enum TaskSpec {
    Regression { bound: Option<f64> },
    Classification,
}

pub struct LoadedCsv {
    pub dataset: Dataset,
    pub target_name: String,
}

pub fn load_csv(path: &Path, target_column: &str, task: &TaskSpec) -> Result<LoadedCsv, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?
        .iter()
        .map(|h| h.trim().to_string())
        .collect();
    if headers.is_empty() {
        return Err(CliError::Data(format!("{}: empty file", path.display())));
    }
    let target_idx = headers
        .iter()
        .position(|h| h == target_column)
        .ok_or_else(|| {
            CliError::Data(format!(
                "{}: missing column `{target_column}`",
                path.display()
            ))
        })?;
    let feature_names: Vec<String> = headers
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != target_idx)
        .map(|(_, h)| h.clone())
        .collect();

    let mut features: Vec<f64> = Vec::new();
    let mut raw_targets: Vec<String> = Vec::new();
    for (row_idx, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
        if record.len() != headers.len() {
            return Err(CliError::Data(format!(
                "row {}: expected {} cells, got {}",
                row_idx + 1,
                headers.len(),
                record.len()
            )));
        }
        for (col_idx, cell) in record.iter().enumerate() {
            if col_idx == target_idx {
                raw_targets.push(cell.trim().to_string());
            } else {
                let value: f64 = cell.trim().parse().map_err(|_| {
                    CliError::Data(format!(
                        "non-numeric cell at row {}, column `{}`: `{cell}`",
                        row_idx + 1,
                        headers[col_idx]
                    ))
                })?;
                if !value.is_finite() {
                    return Err(CliError::Data(format!(
                        "non-finite cell at row {}, column `{}`: `{cell}`",
                        row_idx + 1,
                        headers[col_idx]
                    )));
                }
                features.push(value);
            }
        }
    }
    if raw_targets.is_empty() {
        return Err(CliError::Data(format!(
            "{}: no data rows",
            path.display()
        )));
    }

    let target = match task {
        TaskSpec::Regression { bound } => {
            let mut values = Vec::with_capacity(raw_targets.len());
            for (row_idx, cell) in raw_targets.iter().enumerate() {
                let value: f64 = cell.parse().map_err(|_| {
                    CliError::Data(format!(
                        "non-numeric target at row {}: `{cell}`",
                        row_idx + 1
                    ))
                })?;
                if !value.is_finite() {
                    return Err(CliError::Data(format!(
                        "non-finite target at row {}: `{cell}`",
                        row_idx + 1
                    )));
                }
                values.push(value);
            }
            match bound {
                Some(b) => Target::Real {
                    values,
                    bound: *b,
                },
                None => Target::real_auto_bound(values),
            }
        }
        TaskSpec::Classification => {
            let mut classes: Vec<String> = Vec::new();
            let mut labels = Vec::with_capacity(raw_targets.len());
            for cell in &raw_targets {
                let label = match classes.iter().position(|c| c == cell) {
                    Some(idx) => idx,
                    None => {
                        classes.push(cell.clone());
                        classes.len() - 1
                    }
                };
                labels.push(label);
            }
            Target::Class { labels, classes }
        }
    };

    Ok(LoadedCsv {
        dataset: Dataset::new(features, feature_names, target)?,
        target_name: target_column.to_string(),
    })
}

pub fn write_csv(ds: &Dataset, target_name: &str, path: &Path) -> Result<(), CliError> {
    let mut writer = csv::WriterBuilder::new()
        .from_path(path)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    let mut header: Vec<String> = ds.feature_names().to_vec();
    header.push(target_name.to_string());
    writer
        .write_record(&header)
        .map_err(|e| CliError::Data(e.to_string()))?;
    for r in 0..ds.n_rows() {
        let mut record: Vec<String> = ds.row(r).iter().map(|v| format!("{v}")).collect();
        match ds.target() {
            Target::Real { values, .. } => record.push(format!("{}", values[r])),
            Target::Class { labels, classes } => record.push(classes[labels[r]].clone()),
        }
        writer
            .write_record(&record)
            .map_err(|e| CliError::Data(e.to_string()))?;
    }
    writer.flush()?;
    Ok(())
}
