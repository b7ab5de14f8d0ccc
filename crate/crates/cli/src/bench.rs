//! `bench`: stopping-criterion comparison over a grid of classification
//! problems. For every (problem, rule) cell: deterministic stratified split,
//! standardization fit on the training part, greedy selection on the
//! training part, then a small k-NN majority-vote classifier scores the
//! selected features on the held-out part. Results land in a plot-ready CSV.

use std::path::PathBuf;

use infosel_core::classify::knn_accuracy;
use infosel_core::data::{Dataset, IndexSet, Standardizer};
use infosel_core::selection::{backward_eliminate, forward_select, Direction, KnnScorer, StoppingRule};
use infosel_core::synth::{generate, SynthKind, SynthSpec};

use crate::csvio::{load_csv, TaskSpec};
use crate::error::CliError;
use crate::formats::rule_label;
use crate::manifest::ManifestBuilder;
use crate::seed::subseed;
use crate::select::KNeighbors;

#[derive(Debug, Clone)]
pub struct BenchParams {
    /// CSV problem files (classification target). Mutually exclusive with
    /// the generator grid below.
    pub inputs: Vec<PathBuf>,
    pub target: String,
    /// Generator grid: one conditional-Gaussian problem per entry of
    /// `useful`, each with `n` samples over `d` features.
    pub gen_useful: Vec<usize>,
    pub n: usize,
    pub d: usize,
    pub rules: Vec<StoppingRule>,
    pub direction: Direction,
    pub k_neighbors: KNeighbors,
    pub test_fraction: f64,
    pub eval_neighbors: usize,
    pub seed: u64,
    pub out: PathBuf,
}

struct Problem {
    name: String,
    useful_k: Option<usize>,
    dataset: Dataset,
}

fn assemble_problems(params: &BenchParams) -> Result<Vec<Problem>, CliError> {
    if params.inputs.is_empty() == params.gen_useful.is_empty() {
        return Err(CliError::Usage(
            "provide either --input files or a --useful generator grid (not both)".into(),
        ));
    }
    if !params.inputs.is_empty() {
        let mut problems = Vec::new();
        for path in &params.inputs {
            let loaded = load_csv(path, &params.target, &TaskSpec::Classification)?;
            problems.push(Problem {
                name: path
                    .file_stem()
                    .map(|s| s.to_string_lossy().to_string())
                    .unwrap_or_else(|| path.display().to_string()),
                useful_k: None,
                dataset: loaded.dataset,
            });
        }
        return Ok(problems);
    }
    let mut problems = Vec::new();
    for (index, &k) in params.gen_useful.iter().enumerate() {
        let spec = SynthSpec {
            n: params.n,
            d: params.d,
            k,
            seed: subseed(params.seed, 2 * index as u64),
            kind: SynthKind::ConditionalGaussian,
        };
        let dataset = generate(&spec).map_err(CliError::from)?;
        problems.push(Problem {
            name: format!("cond-gauss-k{k}"),
            useful_k: Some(k),
            dataset,
        });
    }
    Ok(problems)
}

pub fn run(params: &BenchParams) -> Result<(), CliError> {
    if !(params.test_fraction > 0.0 && params.test_fraction < 1.0) {
        return Err(CliError::Usage("test fraction must lie in (0, 1)".into()));
    }
    if params.rules.is_empty() {
        return Err(CliError::Usage("need at least one stopping rule".into()));
    }
    let problems = assemble_problems(params)?;

    let mut writer = csv::WriterBuilder::new()
        .from_path(&params.out)
        .map_err(|e| CliError::Data(format!("{}: {e}", params.out.display())))?;
    writer
        .write_record([
            "problem",
            "useful_k",
            "rule",
            "n_features",
            "n_selected",
            "fraction_selected",
            "test_accuracy",
            "guarantee",
        ])
        .map_err(|e| CliError::Data(e.to_string()))?;

    for (index, problem) in problems.iter().enumerate() {
        let split_seed = subseed(params.seed, 2 * index as u64 + 1);
        let (train_raw, test_raw) = problem
            .dataset
            .train_test_split(params.test_fraction, split_seed)?;
        let scaler = Standardizer::fit(&train_raw);
        let train = scaler.transform(&train_raw);
        let test = scaler.transform(&test_raw);
        let cfg = params.k_neighbors.config(train.n_rows());

        for rule in &params.rules {
            let scorer = KnnScorer::new(&train, cfg);
            let mut trace = match params.direction {
                Direction::Backward => backward_eliminate(&scorer, rule)?,
                Direction::Forward => forward_select(&scorer, rule)?,
            };
            trace.seed = Some(params.seed);
            let selected: IndexSet = trace.selected.clone();
            let train_sel = train.subset(&selected)?;
            let test_sel = test.subset(&selected)?;
            let accuracy = knn_accuracy(&train_sel, &test_sel, params.eval_neighbors)?;
            let d = problem.dataset.n_features();
            writer
                .write_record([
                    problem.name.clone(),
                    problem
                        .useful_k
                        .map(|k| k.to_string())
                        .unwrap_or_default(),
                    rule_label(rule),
                    d.to_string(),
                    selected.len().to_string(),
                    format!("{}", selected.len() as f64 / d as f64),
                    format!("{accuracy}"),
                    trace.guarantee.map(|g| format!("{g}")).unwrap_or_default(),
                ])
                .map_err(|e| CliError::Data(e.to_string()))?;
        }
    }
    writer.flush()?;

    let mut manifest = ManifestBuilder::new(
        "bench",
        serde_json::json!({
            "inputs": params.inputs.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
            "target": params.target,
            "useful": params.gen_useful,
            "n": params.n,
            "d": params.d,
            "rules": params.rules.iter().map(rule_label).collect::<Vec<_>>(),
            "direction": match params.direction {
                Direction::Backward => "backward",
                Direction::Forward => "forward",
            },
            "test_fraction": params.test_fraction,
            "eval_neighbors": params.eval_neighbors,
            "out": params.out.display().to_string(),
        }),
        Some(params.seed),
    );
    for path in &params.inputs {
        manifest.input(path)?;
    }
    manifest.output(&params.out);
    manifest.write(&params.out)?;

    println!(
        "bench wrote {} ({} problems x {} rules)",
        params.out.display(),
        problems.len(),
        params.rules.len()
    );
    Ok(())
}
