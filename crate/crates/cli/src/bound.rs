//! `bound`: linear removal-bound report for a regression CSV.

use std::path::PathBuf;

use infosel_core::bounds::linear_subset_bound;
use infosel_core::data::IndexSet;

use crate::csvio::{load_csv, TaskSpec};
use crate::error::CliError;
use crate::formats::{write_json, BoundDoc};
use crate::manifest::ManifestBuilder;

#[derive(Debug, Clone)]
pub struct BoundParams {
    pub input: PathBuf,
    pub target: String,
    pub target_bound: Option<f64>,
    /// Features to remove, by name or zero-based index.
    pub subset: Vec<String>,
    pub out: Option<PathBuf>,
}

pub fn run(params: &BoundParams) -> Result<PathBuf, CliError> {
    let loaded = load_csv(
        &params.input,
        &params.target,
        &TaskSpec::Regression {
            bound: params.target_bound,
        },
    )?;
    let ds = loaded.dataset;

    let mut indices = Vec::with_capacity(params.subset.len());
    for entry in &params.subset {
        let index = match ds.feature_names().iter().position(|n| n == entry) {
            Some(i) => i,
            None => entry.parse::<usize>().map_err(|_| {
                CliError::Usage(format!(
                    "`{entry}` names no feature column and is not an index"
                ))
            })?,
        };
        if index >= ds.n_features() {
            return Err(CliError::Usage(format!(
                "feature index {index} out of range for {} features",
                ds.n_features()
            )));
        }
        indices.push(index);
    }
    let removed = IndexSet::new(indices);

    let report = linear_subset_bound(&ds, &removed)?;
    let doc = BoundDoc::new(&report);

    let out = params.out.clone().unwrap_or_else(|| {
        let stem = params
            .input
            .file_stem()
            .map(|s| s.to_string_lossy().to_string())
            .unwrap_or_else(|| "bound".into());
        params.input.with_file_name(format!("{stem}.bound.json"))
    });
    let mut manifest = ManifestBuilder::new(
        "bound",
        serde_json::json!({
            "input": params.input.display().to_string(),
            "target": params.target,
            "target_bound": params.target_bound,
            "subset": params.subset,
            "out": out.display().to_string(),
        }),
        None,
    );
    manifest.input(&params.input)?;
    write_json(&doc, &out)?;
    manifest.output(&out);
    manifest.write(&out)?;

    println!(
        "removing {{{}}}: root-MSE bound {} (full-model root-MSE {})",
        doc.removed_names.join(", "),
        doc.general_bound,
        doc.sigma_full
    );
    println!("report written to {}", out.display());
    Ok(out)
}
