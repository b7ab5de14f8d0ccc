use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use infosel::bench::BenchParams;
use infosel::bound::BoundParams;
use infosel::csvio::TaskSpec;
use infosel::error::CliError;
use infosel::formats::parse_stop_rule;
use infosel::generate::GenerateParams;
use infosel::select::{KNeighbors, SelectParams};
use infosel::verify::VerifyParams;
use infosel_core::selection::Direction;

/// Feature selection by conditional mutual information, with verifiable
/// error budgets.
#[derive(Parser)]
#[command(name = "infosel", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded synthetic dataset (CSV plus a spec sidecar).
    Generate {
        /// cond-gauss | example1 | linear-gauss
        #[arg(long)]
        kind: String,
        /// Sample count.
        #[arg(long, default_value_t = 500)]
        n: usize,
        /// Feature count (cond-gauss; example1 is fixed at 2, linear-gauss
        /// takes its dimension from --weights).
        #[arg(long, default_value_t = 15)]
        d: usize,
        /// Useful-feature count (cond-gauss).
        #[arg(long, default_value_t = 5)]
        k: usize,
        /// Coefficient of x1 (example1).
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        /// Coefficient of x2 (example1).
        #[arg(long, default_value_t = 1.0)]
        b: f64,
        /// Standard deviation of the latent z (example1).
        #[arg(long, default_value_t = 2.0)]
        sigma_z: f64,
        /// Comma-separated target weights (linear-gauss).
        #[arg(long, value_parser = parse_weights)]
        weights: Option<Vec<f64>>,
        /// Observation noise standard deviation (linear-gauss).
        #[arg(long, default_value_t = 0.1)]
        noise_std: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run greedy selection over a CSV dataset and write the trace JSON.
    Select {
        #[arg(long)]
        input: PathBuf,
        /// Target column name.
        #[arg(long)]
        target: String,
        /// classification | regression
        #[arg(long)]
        task: String,
        /// Explicit target bound B (regression; default: empirical max |y|).
        #[arg(long)]
        target_bound: Option<f64>,
        /// backward | forward
        #[arg(long, default_value = "backward")]
        direction: String,
        /// Stopping rule: error:DELTA | fscore:DELTA | dfscore:DELTA | nfeat:K
        #[arg(long)]
        stop: String,
        /// `auto` (max(3, floor(0.05 n))) or an explicit neighbor count.
        #[arg(long, default_value = "auto")]
        k_neighbors: String,
        /// Skip per-column standardization before estimation.
        #[arg(long)]
        no_standardize: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Trace output path (default: `<input stem>.trace.json`).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the oracle property suite (bounds, telescoping, budget safety).
    Verify {
        /// Number of random joints per property.
        #[arg(long, default_value_t = 200)]
        joints: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Check a single serialized joint instead of the random suite.
        #[arg(long)]
        from_file: Option<PathBuf>,
        /// Optional JSON report path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare stopping rules across problems; emits a results CSV.
    Bench {
        /// Problem CSV files (classification). Repeatable.
        #[arg(long)]
        input: Vec<PathBuf>,
        /// Target column name for --input files.
        #[arg(long, default_value = "y")]
        target: String,
        /// Generator grid: one conditional-Gaussian problem per useful-count
        /// entry (comma-separated), e.g. `--useful 9,12,15`.
        #[arg(long, value_parser = parse_usize_list)]
        useful: Option<Vec<usize>>,
        /// Samples per generated problem.
        #[arg(long, default_value_t = 500)]
        n: usize,
        /// Features per generated problem.
        #[arg(long, default_value_t = 30)]
        d: usize,
        /// Comma-separated stopping rules, e.g.
        /// `error:0.1,nfeat:10,fscore:0.05,dfscore:0.05`.
        #[arg(long)]
        rules: String,
        /// backward | forward
        #[arg(long, default_value = "backward")]
        direction: String,
        #[arg(long, default_value = "auto")]
        k_neighbors: String,
        #[arg(long, default_value_t = 0.3)]
        test_fraction: f64,
        /// Neighbors for the built-in evaluation classifier.
        #[arg(long, default_value_t = 5)]
        eval_neighbors: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Results CSV path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate the linear removal bound for a feature subset.
    Bound {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        target: String,
        /// Explicit target bound B (default: empirical max |y|).
        #[arg(long)]
        target_bound: Option<f64>,
        /// Features to remove, by name or zero-based index. Repeatable or
        /// comma-separated.
        #[arg(long, value_delimiter = ',')]
        subset: Vec<String>,
        /// Report output path (default: `<input stem>.bound.json`).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_weights(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| format!("`{p}` is not a number"))
        })
        .collect()
}

fn parse_usize_list(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| format!("`{p}` is not an integer"))
        })
        .collect()
}

fn parse_direction(s: &str) -> Result<Direction, CliError> {
    match s {
        "backward" => Ok(Direction::Backward),
        "forward" => Ok(Direction::Forward),
        other => Err(CliError::Usage(format!(
            "unknown direction `{other}` (expected backward | forward)"
        ))),
    }
}

fn parse_task(s: &str, bound: Option<f64>) -> Result<TaskSpec, CliError> {
    match s {
        "classification" => Ok(TaskSpec::Classification),
        "regression" => Ok(TaskSpec::Regression { bound }),
        other => Err(CliError::Usage(format!(
            "unknown task `{other}` (expected classification | regression)"
        ))),
    }
}

fn parse_k_neighbors(s: &str) -> Result<KNeighbors, CliError> {
    s.parse().map_err(CliError::Usage)
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Generate {
            kind,
            n,
            d,
            k,
            a,
            b,
            sigma_z,
            weights,
            noise_std,
            seed,
            out,
        } => infosel::generate::run(&GenerateParams {
            kind,
            n,
            d,
            k,
            a,
            b,
            sigma_z,
            weights,
            noise_std,
            seed,
            out,
        }),
        Command::Select {
            input,
            target,
            task,
            target_bound,
            direction,
            stop,
            k_neighbors,
            no_standardize,
            seed,
            out,
        } => {
            let params = SelectParams {
                input,
                target,
                task: parse_task(&task, target_bound)?,
                direction: parse_direction(&direction)?,
                rule: parse_stop_rule(&stop)?,
                k_neighbors: parse_k_neighbors(&k_neighbors)?,
                standardize: !no_standardize,
                seed,
                out,
            };
            infosel::select::run(&params).map(|_| ())
        }
        Command::Verify {
            joints,
            seed,
            from_file,
            out,
        } => infosel::verify::run(&VerifyParams {
            joints,
            seed,
            from_file,
            out,
        }),
        Command::Bench {
            input,
            target,
            useful,
            n,
            d,
            rules,
            direction,
            k_neighbors,
            test_fraction,
            eval_neighbors,
            seed,
            out,
        } => {
            let rules = rules
                .split(',')
                .map(parse_stop_rule)
                .collect::<Result<Vec<_>, _>>()?;
            infosel::bench::run(&BenchParams {
                inputs: input,
                target,
                gen_useful: useful.unwrap_or_default(),
                n,
                d,
                rules,
                direction: parse_direction(&direction)?,
                k_neighbors: parse_k_neighbors(&k_neighbors)?,
                test_fraction,
                eval_neighbors,
                seed,
                out,
            })
        }
        Command::Bound {
            input,
            target,
            target_bound,
            subset,
            out,
        } => infosel::bound::run(&BoundParams {
            input,
            target,
            target_bound,
            subset,
            out,
        })
        .map(|_| ()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
