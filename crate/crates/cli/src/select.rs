//! `select`: greedy feature selection over a CSV dataset with the estimator
//! scorer; emits a trace JSON and prints the selected feature names.

use std::path::PathBuf;
use std::str::FromStr;

use infosel_core::estimator::KnnConfig;
use infosel_core::selection::{backward_eliminate, forward_select, Direction, KnnScorer, StoppingRule};

use crate::csvio::{load_csv, TaskSpec};
use crate::error::CliError;
use crate::formats::{rule_label, write_json, TraceDoc};
use crate::manifest::ManifestBuilder;

/// `auto` (a fixed fraction of the sample size) or an explicit count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KNeighbors {
    Auto,
    Fixed(usize),
}

impl KNeighbors {
    pub fn config(&self, n: usize) -> KnnConfig {
        match self {
            KNeighbors::Auto => KnnConfig::auto(n),
            KNeighbors::Fixed(k) => KnnConfig::with_k(*k),
        }
    }
}

impl FromStr for KNeighbors {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "auto" {
            return Ok(KNeighbors::Auto);
        }
        s.parse::<usize>()
            .map(KNeighbors::Fixed)
            .map_err(|_| format!("`{s}` is neither `auto` nor a neighbor count"))
    }
}

#[derive(Debug, Clone)]
pub struct SelectParams {
    pub input: PathBuf,
    pub target: String,
    pub task: TaskSpec,
    pub direction: Direction,
    pub rule: StoppingRule,
    pub k_neighbors: KNeighbors,
    pub standardize: bool,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

pub fn run(params: &SelectParams) -> Result<PathBuf, CliError> {
    let loaded = load_csv(&params.input, &params.target, &params.task)?;
    let dataset = if params.standardize {
        loaded.dataset.standardize()
    } else {
        loaded.dataset
    };
    let cfg = params.k_neighbors.config(dataset.n_rows());
    let scorer = KnnScorer::new(&dataset, cfg);
    let mut trace = match params.direction {
        Direction::Backward => backward_eliminate(&scorer, &params.rule)?,
        Direction::Forward => forward_select(&scorer, &params.rule)?,
    };
    trace.seed = Some(params.seed);

    let doc = TraceDoc::new(&trace, dataset.feature_names(), params.standardize);
    let out = params.out.clone().unwrap_or_else(|| {
        let stem = params
            .input
            .file_stem()
            .map(|s| s.to_string_lossy().to_string())
            .unwrap_or_else(|| "select".into());
        params.input.with_file_name(format!("{stem}.trace.json"))
    });

    let mut manifest = ManifestBuilder::new(
        "select",
        serde_json::json!({
            "input": params.input.display().to_string(),
            "target": params.target,
            "task": match &params.task {
                TaskSpec::Regression { bound } => serde_json::json!({
                    "kind": "regression", "bound": bound,
                }),
                TaskSpec::Classification => serde_json::json!({"kind": "classification"}),
            },
            "direction": match params.direction {
                Direction::Backward => "backward",
                Direction::Forward => "forward",
            },
            "stop": rule_label(&params.rule),
            "k_neighbors": cfg.k,
            "standardize": params.standardize,
            "out": out.display().to_string(),
        }),
        Some(params.seed),
    );
    manifest.input(&params.input)?;
    write_json(&doc, &out)?;
    manifest.output(&out);
    manifest.write(&out)?;

    println!(
        "selected {}/{} features: {}",
        doc.selected.len(),
        dataset.n_features(),
        doc.selected_names.join(" ")
    );
    if let Some(g) = doc.guarantee {
        println!("accumulated-CMI guarantee term: {g}");
    }
    println!("trace written to {}", out.display());
    Ok(out)
}
