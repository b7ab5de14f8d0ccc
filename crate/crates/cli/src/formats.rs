//! Versioned JSON documents and flag-value parsing.
//!
//! Every document carries `schema_version`. Serialization goes through the
//! structs here rather than the core types directly, so the wire layout is
//! a deliberate, stable surface.

use std::path::Path;

use serde::{Deserialize, Serialize};

use infosel_core::bounds::LinearBoundReport;
use infosel_core::data::TaskKind;
use infosel_core::estimator::KnnConfig;
use infosel_core::oracle::{TabularJoint, TargetSpace};
use infosel_core::selection::{Direction, SelectionTrace, StoppingRule};
use infosel_core::verify::PropertyCheck;

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// `error:0.05`, `fscore:0.05`, `dfscore:0.05` or `nfeat:10`.
pub fn parse_stop_rule(s: &str) -> Result<StoppingRule, CliError> {
    let (kind, value) = s
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("stop rule `{s}` is not of the form kind:value")))?;
    let rule = match kind {
        "error" | "er" => StoppingRule::ErrorBudget {
            delta: parse_delta(value)?,
        },
        "fscore" | "fs" => StoppingRule::FeatureScore {
            delta: parse_delta(value)?,
        },
        "dfscore" | "dfs" => StoppingRule::DeltaFeatureScore {
            delta: parse_delta(value)?,
        },
        "nfeat" | "nf" => StoppingRule::NumFeatures {
            k: value
                .parse()
                .map_err(|_| CliError::Usage(format!("`{value}` is not a feature count")))?,
        },
        other => {
            return Err(CliError::Usage(format!(
                "unknown stop rule `{other}` (expected error | fscore | dfscore | nfeat)"
            )))
        }
    };
    Ok(rule)
}

fn parse_delta(value: &str) -> Result<f64, CliError> {
    let delta: f64 = value
        .parse()
        .map_err(|_| CliError::Usage(format!("`{value}` is not a number")))?;
    if !delta.is_finite() || delta < 0.0 {
        return Err(CliError::Usage("delta must be finite and >= 0".into()));
    }
    Ok(delta)
}

/// Short tag used in file names and bench CSV rows.
pub fn rule_label(rule: &StoppingRule) -> String {
    match rule {
        StoppingRule::ErrorBudget { delta } => format!("error:{delta}"),
        StoppingRule::FeatureScore { delta } => format!("fscore:{delta}"),
        StoppingRule::DeltaFeatureScore { delta } => format!("dfscore:{delta}"),
        StoppingRule::NumFeatures { k } => format!("nfeat:{k}"),
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TaskDoc {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_classes: Option<usize>,
}

impl From<TaskKind> for TaskDoc {
    fn from(task: TaskKind) -> Self {
        match task {
            TaskKind::Regression { target_bound } => TaskDoc {
                kind: "regression".into(),
                target_bound: Some(target_bound),
                n_classes: None,
            },
            TaskKind::Classification { n_classes } => TaskDoc {
                kind: "classification".into(),
                target_bound: None,
                n_classes: Some(n_classes),
            },
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RuleDoc {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
}

impl From<StoppingRule> for RuleDoc {
    fn from(rule: StoppingRule) -> Self {
        match rule {
            StoppingRule::ErrorBudget { delta } => RuleDoc {
                kind: "error".into(),
                delta: Some(delta),
                k: None,
            },
            StoppingRule::FeatureScore { delta } => RuleDoc {
                kind: "fscore".into(),
                delta: Some(delta),
                k: None,
            },
            StoppingRule::DeltaFeatureScore { delta } => RuleDoc {
                kind: "dfscore".into(),
                delta: Some(delta),
                k: None,
            },
            StoppingRule::NumFeatures { k } => RuleDoc {
                kind: "nfeat".into(),
                delta: None,
                k: Some(k),
            },
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct EstimatorDoc {
    pub k: usize,
    pub tie_epsilon: f64,
}

impl From<KnnConfig> for EstimatorDoc {
    fn from(cfg: KnnConfig) -> Self {
        EstimatorDoc {
            k: cfg.k,
            tie_epsilon: cfg.tie_epsilon,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct StepDoc {
    pub feature: usize,
    pub name: String,
    pub cmi: f64,
    pub cumulative: f64,
    pub clamped: bool,
}

/// Serialized greedy run.
#[derive(Debug, Serialize, Deserialize)]
pub struct TraceDoc {
    pub schema_version: u32,
    pub direction: String,
    pub task: TaskDoc,
    pub rule: RuleDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold_used: Option<f64>,
    pub steps: Vec<StepDoc>,
    pub selected: Vec<usize>,
    pub selected_names: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub guarantee: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub estimator: Option<EstimatorDoc>,
    pub standardized: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl TraceDoc {
    pub fn new(trace: &SelectionTrace, feature_names: &[String], standardized: bool) -> Self {
        TraceDoc {
            schema_version: SCHEMA_VERSION,
            direction: match trace.direction {
                Direction::Backward => "backward".into(),
                Direction::Forward => "forward".into(),
            },
            task: trace.task.into(),
            rule: trace.rule.into(),
            threshold_used: trace.threshold_used,
            steps: trace
                .steps
                .iter()
                .map(|s| StepDoc {
                    feature: s.feature,
                    name: feature_names[s.feature].clone(),
                    cmi: s.cmi,
                    cumulative: s.cumulative,
                    clamped: s.clamped,
                })
                .collect(),
            selected: trace.selected.iter().collect(),
            selected_names: trace
                .selected
                .iter()
                .map(|i| feature_names[i].clone())
                .collect(),
            guarantee: trace.guarantee,
            estimator: trace.estimator.map(EstimatorDoc::from),
            standardized,
            seed: trace.seed,
        }
    }
}

/// Serialized tabulated joint. `pmf` entries are `[x-tuple, target-index,
/// probability]`; `targets` lists the target domain (class indices as reals,
/// or the discrete real values).
#[derive(Debug, Serialize, Deserialize)]
pub struct JointDoc {
    pub schema_version: u32,
    pub arities: Vec<usize>,
    pub target_kind: String,
    pub targets: Vec<f64>,
    pub pmf: Vec<(Vec<usize>, usize, f64)>,
}

impl JointDoc {
    pub fn from_joint(joint: &TabularJoint) -> Self {
        let arities = joint.arities().to_vec();
        let ny = joint.target().len();
        let (target_kind, targets) = match joint.target() {
            TargetSpace::Classes { count } => {
                ("classes".to_string(), (0..*count).map(|c| c as f64).collect())
            }
            TargetSpace::Values { values } => ("values".to_string(), values.clone()),
        };
        let nx: usize = arities.iter().product();
        let mut pmf = Vec::with_capacity(nx * ny);
        for x in 0..nx {
            let mut digits = Vec::with_capacity(arities.len());
            let mut rem = x;
            for &a in &arities {
                digits.push(rem % a);
                rem /= a;
            }
            for y in 0..ny {
                pmf.push((digits.clone(), y, joint.pmf()[x * ny + y]));
            }
        }
        JointDoc {
            schema_version: SCHEMA_VERSION,
            arities,
            target_kind,
            targets,
            pmf,
        }
    }

    pub fn into_joint(self) -> Result<TabularJoint, CliError> {
        let target = match self.target_kind.as_str() {
            "classes" => TargetSpace::Classes {
                count: self.targets.len(),
            },
            "values" => TargetSpace::Values {
                values: self.targets.clone(),
            },
            other => {
                return Err(CliError::Data(format!(
                    "unknown target_kind `{other}` (expected classes | values)"
                )))
            }
        };
        let ny = self.targets.len();
        let nx: usize = self.arities.iter().product();
        let mut pmf = vec![0.0f64; nx * ny];
        for (digits, y, p) in &self.pmf {
            if digits.len() != self.arities.len() {
                return Err(CliError::Data(
                    "pmf entry has the wrong number of feature digits".into(),
                ));
            }
            let mut flat = 0usize;
            let mut stride = 1usize;
            for (digit, &arity) in digits.iter().zip(&self.arities) {
                if *digit >= arity {
                    return Err(CliError::Data(format!(
                        "feature digit {digit} out of range for arity {arity}"
                    )));
                }
                flat += digit * stride;
                stride *= arity;
            }
            if *y >= ny {
                return Err(CliError::Data(format!(
                    "target index {y} out of range for {ny} targets"
                )));
            }
            pmf[flat * ny + y] = *p;
        }
        // normalization violations surface as a property failure, not a
        // parse failure
        TabularJoint::new(self.arities, target, pmf)
            .map_err(|e| CliError::Property(e.to_string()))
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FeatureResidualDoc {
    pub index: usize,
    pub name: String,
    pub weight: f64,
    pub residual_std: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PearsonDoc {
    pub dim: usize,
    /// Row-major `dim x dim`.
    pub values: Vec<f64>,
    pub target: Vec<f64>,
}

/// Serialized linear removal-bound report.
#[derive(Debug, Serialize, Deserialize)]
pub struct BoundDoc {
    pub schema_version: u32,
    pub removed: Vec<usize>,
    pub removed_names: Vec<String>,
    pub sigma_full: f64,
    pub sigma_y: f64,
    pub general_bound: f64,
    pub general_bound_squared: f64,
    pub uncorrelated_bound: f64,
    pub premise_satisfied: bool,
    pub per_feature: Vec<FeatureResidualDoc>,
    pub pearson: PearsonDoc,
}

impl BoundDoc {
    pub fn new(report: &LinearBoundReport) -> Self {
        BoundDoc {
            schema_version: SCHEMA_VERSION,
            removed: report.removed.clone(),
            removed_names: report.removed_names.clone(),
            sigma_full: report.sigma_full,
            sigma_y: report.sigma_y,
            general_bound: report.general_bound,
            general_bound_squared: report.general_bound_squared,
            uncorrelated_bound: report.uncorrelated_bound,
            premise_satisfied: report.premise_satisfied,
            per_feature: report
                .per_feature
                .iter()
                .map(|t| FeatureResidualDoc {
                    index: t.index,
                    name: t.name.clone(),
                    weight: t.weight,
                    residual_std: t.residual_std,
                })
                .collect(),
            pearson: PearsonDoc {
                dim: report.pearson.dim,
                values: report.pearson.values.clone(),
                target: report.pearson.target.clone(),
            },
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CheckDoc {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VerifyDoc {
    pub schema_version: u32,
    pub joints: usize,
    pub seed: u64,
    pub checks: Vec<CheckDoc>,
    pub all_pass: bool,
}

impl VerifyDoc {
    pub fn new(joints: usize, seed: u64, checks: &[PropertyCheck]) -> Self {
        VerifyDoc {
            schema_version: SCHEMA_VERSION,
            joints,
            seed,
            checks: checks
                .iter()
                .map(|c| CheckDoc {
                    name: c.name.clone(),
                    pass: c.pass,
                    detail: c.detail.clone(),
                })
                .collect(),
            all_pass: checks.iter().all(|c| c.pass),
        }
    }
}

/// Pretty-printed JSON with a trailing newline, written atomically enough
/// for our purposes (single write call).
pub fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<(), CliError> {
    let mut body = serde_json::to_string_pretty(value)?;
    body.push('\n');
    std::fs::write(path, body)?;
    Ok(())
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let body = std::fs::read_to_string(path)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&body)?)
}
