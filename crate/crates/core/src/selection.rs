//! Greedy backward elimination and forward selection with guarantee
//! accounting.
//!
//! Both algorithms repeatedly score single features by conditional mutual
//! information: backward elimination removes the *least* informative feature
//! given the other remaining ones, forward selection adds the *most*
//! informative feature given those already selected. Under the error-budget
//! rule the per-step scores accumulate and the run stops at a threshold of
//! `delta / (2 B^2)` (regression) or `delta^2 / 2` (classification);
//! telescoping via the chain rule turns the accumulated sum into a bound on
//! the ideal-error inflation.
//!
//! Stop semantics differ by direction, deliberately:
//!
//! * backward refuses the removal that would push the accumulated CMI past
//!   the threshold — the guarantee must hold for the *retained* set, so the
//!   offending feature stays selected (a removal landing exactly on the
//!   threshold is still committed; with `delta = 0` this removes exactly the
//!   zero-CMI features);
//! * forward commits the addition that crosses the threshold — accumulated
//!   information only strengthens the selected set.

use num_traits::Float;

use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

use alloc::collections::BTreeMap;


use crate::data::{Dataset, IndexSet, TaskKind};
use crate::estimator::{knn_mi, EstimatorError, KnnConfig, SampleBlock};
use crate::oracle::{TabularJoint, TargetSpace};

/// When to stop a greedy run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StoppingRule {
    /// Stop before the accumulated CMI exceeds the budget implied by the
    /// maximum tolerated error inflation `delta`.
    ErrorBudget { delta: f64 },
    /// Stop when the best step score passes `delta` (backward: min score
    /// above it; forward: max score below it).
    FeatureScore { delta: f64 },
    /// Knee detection: stop when consecutive step scores jump by more than
    /// `delta` (backward: upward jump; forward: downward drop).
    DeltaFeatureScore { delta: f64 },
    /// Stop at exactly `k` selected features.
    NumFeatures { k: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Backward,
    Forward,
}

/// One committed greedy step.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectionStep {
    pub feature: usize,
    /// Step CMI in nats (clamped at zero when the raw estimate was negative).
    pub cmi: f64,
    /// Running sum of the step CMIs, nondecreasing.
    pub cumulative: f64,
    pub clamped: bool,
}

/// Complete record of a greedy run.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectionTrace {
    pub direction: Direction,
    pub rule: StoppingRule,
    pub task: TaskKind,
    pub n_features: usize,
    pub steps: Vec<SelectionStep>,
    /// Features retained (backward) or picked (forward).
    pub selected: IndexSet,
    /// Cumulative-CMI stop level; only the error-budget rule has one.
    pub threshold_used: Option<f64>,
    /// Additive error term implied by the accumulated CMI (error-budget runs
    /// only). For backward runs this bounds the ideal-error inflation of the
    /// retained set; for forward runs it is the analogous transform of the
    /// information captured so far — the absolute forward bound would also
    /// need the unknown total `I(Y; X)`.
    pub guarantee: Option<f64>,
    /// Estimator settings, echoed when the scorer estimates from samples.
    pub estimator: Option<KnnConfig>,
    /// Caller-provided provenance; not used by the algorithms.
    pub seed: Option<u64>,
}

impl SelectionTrace {
    pub fn cumulative_cmi(&self) -> f64 {
        self.steps.last().map(|s| s.cumulative).unwrap_or(0.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SelectionError {
    EmptyFeatureSet,
    WrongRuleVariant,
    InvalidRule(&'static str),
    Estimator(EstimatorError),
}

impl fmt::Display for SelectionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SelectionError::EmptyFeatureSet => write!(f, "no features to select from"),
            SelectionError::WrongRuleVariant => {
                write!(f, "operation requires an error-budget rule")
            }
            SelectionError::InvalidRule(what) => write!(f, "invalid stopping rule: {what}"),
            SelectionError::Estimator(e) => write!(f, "estimation failed: {e}"),
        }
    }
}

impl core::error::Error for SelectionError {}

impl From<EstimatorError> for SelectionError {
    fn from(e: EstimatorError) -> Self {

        SelectionError::Estimator(e)
    }
}

/// A scored candidate CMI.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CmiScore {
    pub value: f64,
    pub clamped: bool,
}

/// Source of conditional mutual information scores.
///
/// `cmi(feature, context)` returns `I(Y; X_feature | X_context)`; the context
/// never contains the candidate and omitted features are simply not observed.
pub trait CmiScorer {
    fn n_features(&self) -> usize;
    fn task(&self) -> TaskKind;
    fn cmi(&self, feature: usize, context: &IndexSet) -> Result<CmiScore, SelectionError>;
    fn estimator_echo(&self) -> Option<KnnConfig> {
        None
    }
}

/// Cumulative-CMI stop level of the error-budget rule: `delta / (2 B^2)` for
/// regression, `delta^2 / 2` for classification.
pub fn stop_threshold(rule: &StoppingRule, task: TaskKind) -> Result<f64, SelectionError> {
    let StoppingRule::ErrorBudget { delta } = rule else {
        return Err(SelectionError::WrongRuleVariant);
    };
    if !delta.is_finite() || *delta < 0.0 {
        return Err(SelectionError::InvalidRule("delta must be finite and >= 0"));
    }
    Ok(match task {
        TaskKind::Regression { target_bound } => delta / (2.0 * target_bound * target_bound),
        TaskKind::Classification { .. } => delta * delta / 2.0,
    })
}

/// Additive error term implied by an error-budget trace: `2 B^2 * sum I_t`
/// for regression, `sqrt(2 * sum I_t)` for classification.
pub fn guarantee(trace: &SelectionTrace, task: TaskKind) -> Result<f64, SelectionError> {
    if !matches!(trace.rule, StoppingRule::ErrorBudget { .. }) {
        return Err(SelectionError::WrongRuleVariant);
    }
    let total = trace.cumulative_cmi();
    Ok(match task {
        TaskKind::Regression { target_bound } => 2.0 * target_bound * target_bound * total,
        TaskKind::Classification { .. } => (2.0 * total).sqrt(),
    })
}

fn validate_rule(rule: &StoppingRule) -> Result<(), SelectionError> {
    match rule {
        StoppingRule::ErrorBudget { delta }
        | StoppingRule::FeatureScore { delta }
        | StoppingRule::DeltaFeatureScore { delta } => {
            if !delta.is_finite() || *delta < 0.0 {
                return Err(SelectionError::InvalidRule("delta must be finite and >= 0"));
            }
        }
        StoppingRule::NumFeatures { .. } => {}
    }
    Ok(())
}

fn finish_trace<S: CmiScorer>(
    scorer: &S,
    direction: Direction,
    rule: StoppingRule,
    steps: Vec<SelectionStep>,
    selected: IndexSet,
    threshold_used: Option<f64>,
) -> SelectionTrace {
    let task = scorer.task();
    let mut trace = SelectionTrace {
        direction,
        rule,
        task,
        n_features: scorer.n_features(),
        steps,
        selected,
        threshold_used,
        guarantee: None,
        estimator: scorer.estimator_echo(),
        seed: None,
    };
    if matches!(rule, StoppingRule::ErrorBudget { .. }) {
        trace.guarantee = Some(guarantee(&trace, task).expect("error-budget trace"));
    }
    trace
}

/// Greedy backward elimination: repeatedly drop the feature with the lowest
/// CMI given the other remaining ones (ties to the lowest index) until the
/// stopping rule fires. Returns the full step record; `selected` holds the
/// surviving features.
pub fn backward_eliminate<S: CmiScorer>(
    scorer: &S,
    rule: &StoppingRule,
) -> Result<SelectionTrace, SelectionError> {
    validate_rule(rule)?;
    let d = scorer.n_features();
    if d == 0 {
        return Err(SelectionError::EmptyFeatureSet);
    }
    let threshold = match rule {
        StoppingRule::ErrorBudget { .. } => Some(stop_threshold(rule, scorer.task())?),
        _ => None,
    };
    let mut remaining = IndexSet::full(d);
    let mut steps: Vec<SelectionStep> = Vec::new();
    let mut cumulative = 0.0f64;
    let mut prev_score: Option<f64> = None;
    loop {
        if let StoppingRule::NumFeatures { k } = rule {
            if remaining.len() <= *k {
                break;
            }
        }
        if remaining.is_empty() {
            break;
        }
        let mut best: Option<(usize, CmiScore)> = None;
        for i in remaining.iter() {
            let context = remaining.without(i);
            let score = scorer.cmi(i, &context)?;
            if best.as_ref().is_none_or(|(_, b)| score.value < b.value) {
                best = Some((i, score));
            }
        }
        let (feature, score) = best.expect("remaining is non-empty");
        match rule {
            StoppingRule::ErrorBudget { .. } => {
                // refuse the removal that would overdraw the budget
                if cumulative + score.value > threshold.expect("budget rule") {
                    break;
                }
            }
            StoppingRule::FeatureScore { delta } => {
                if score.value > *delta {
                    break;
                }
            }
            StoppingRule::DeltaFeatureScore { delta } => {
                if let Some(prev) = prev_score {
                    if score.value - prev > *delta {
                        break;
                    }
                }
            }
            StoppingRule::NumFeatures { .. } => {}
        }
        cumulative += score.value;
        steps.push(SelectionStep {
            feature,
            cmi: score.value,
            cumulative,
            clamped: score.clamped,
        });
        remaining = remaining.without(feature);
        prev_score = Some(score.value);
    }
    Ok(finish_trace(
        scorer,
        Direction::Backward,
        *rule,
        steps,
        remaining,
        threshold,
    ))
}

/// Greedy forward selection: repeatedly add the feature with the highest CMI
/// given the current selection (ties to the lowest index) until the stopping
/// rule fires.
pub fn forward_select<S: CmiScorer>(
    scorer: &S,
    rule: &StoppingRule,
) -> Result<SelectionTrace, SelectionError> {
    validate_rule(rule)?;
    let d = scorer.n_features();
    if d == 0 {
        return Err(SelectionError::EmptyFeatureSet);
    }
    let threshold = match rule {
        StoppingRule::ErrorBudget { .. } => Some(stop_threshold(rule, scorer.task())?),
        _ => None,
    };
    let mut selected = IndexSet::empty();
    let mut steps: Vec<SelectionStep> = Vec::new();
    let mut cumulative = 0.0f64;
    let mut prev_score: Option<f64> = None;
    loop {
        if let StoppingRule::NumFeatures { k } = rule {
            if selected.len() >= *k {
                break;
            }
        }
        if selected.len() == d {
            break;
        }
        let mut best: Option<(usize, CmiScore)> = None;
        for i in (0..d).filter(|&i| !selected.contains(i)) {
            let score = scorer.cmi(i, &selected)?;
            if best.as_ref().is_none_or(|(_, b)| score.value > b.value) {
                best = Some((i, score));
            }
        }
        let (feature, score) = best.expect("unselected features exist");
        match rule {
            StoppingRule::FeatureScore { delta } => {
                if score.value < *delta {
                    break;
                }
            }
            StoppingRule::DeltaFeatureScore { delta } => {
                if let Some(prev) = prev_score {
                    if prev - score.value > *delta {
                        break;
                    }
                }
            }
            _ => {}
        }
        cumulative += score.value;
        steps.push(SelectionStep {
            feature,
            cmi: score.value,
            cumulative,
            clamped: score.clamped,
        });
        selected = selected.with(feature);
        prev_score = Some(score.value);
        if let StoppingRule::ErrorBudget { .. } = rule {
            // the crossing addition is committed
            if cumulative >= threshold.expect("budget rule") {
                break;
            }
        }
    }
    Ok(finish_trace(
        scorer,
        Direction::Forward,
        *rule,
        steps,
        selected,
        threshold,
    ))
}

/// Sample-based scorer: CMI through the kNN estimator on a dataset whose
/// continuous columns the caller has (normally) standardized.
///
/// Scores are computed as differences of joint MI estimates sharing one `k`:
/// `I(Y; X_i | X_C) = I(Y; X_{C + i}) - I(Y; X_C)`. Because the max norm is
/// insensitive to coordinate order, each joint estimate depends only on the
/// *set* of columns, so the per-set values are memoized; every value is bit
/// identical to the one a fresh estimator call would return.
pub struct KnnScorer<'a> {
    ds: &'a Dataset,
    targets: Vec<f64>,
    cfg: KnnConfig,
    memo: RefCell<BTreeMap<Vec<usize>, f64>>,
}

/// Coordinate assigned per class label in the estimator's target block.
///
/// Class labels are categorical: the only meaningful distances are "same"
/// and "different". Placing labels one unit apart makes the estimator blind
/// whenever the k-th neighbor radius of the feature block exceeds one (which
/// is the norm beyond a handful of dimensions: `n_y` saturates at `N - 1`
/// and every estimate clamps to zero). A gap far above any feature distance
/// keeps neighbor statistics class-conditional at every dimension, the
/// standard construction for discrete/continuous mutual information.
pub const CLASS_SEPARATION: f64 = 1e6;

impl<'a> KnnScorer<'a> {
    pub fn new(ds: &'a Dataset, cfg: KnnConfig) -> Self {
        Self {
            ds,
            targets: Self::encode_target(ds),
            cfg,
            memo: RefCell::new(BTreeMap::new()),
        }
    }

    /// Target block for estimation: class labels spread by
    /// [`CLASS_SEPARATION`]; regression targets z-scored so the target scale
    /// cannot dominate the joint max-norm (mutual information is invariant
    /// under this rescaling, the estimate just stops depending on units).
    fn encode_target(ds: &Dataset) -> Vec<f64> {
        match ds.task() {
            TaskKind::Classification { .. } => ds
                .target_values()
                .iter()
                .map(|&l| l * CLASS_SEPARATION)
                .collect(),
            TaskKind::Regression { .. } => {
                let values = ds.target_values();
                let n = values.len();
                let mean = values.iter().sum::<f64>() / n as f64;
                let var = if n > 1 {
                    values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64
                } else {
                    0.0
                };
                if var > 0.0 {
                    let std = var.sqrt();
                    values.iter().map(|v| (v - mean) / std).collect()
                } else {
                    vec![0.0; n]
                }
            }
        }
    }

    fn mi_of(&self, set: &IndexSet) -> Result<f64, SelectionError> {
        let key: Vec<usize> = set.iter().collect();
        if let Some(&v) = self.memo.borrow().get(&key) {
            return Ok(v);
        }
        let n = self.ds.n_rows();
        let mut block = Vec::with_capacity(n * key.len());
        for r in 0..n {
            let row = self.ds.row(r);
            block.extend(key.iter().map(|&c| row[c]));
        }
        let x = SampleBlock::new(&block, n, key.len())?;
        let y = SampleBlock::new(&self.targets, n, 1)?;
        let value = knn_mi(&x, &y, &self.cfg)?.value;
        self.memo.borrow_mut().insert(key, value);
        Ok(value)
    }
}

impl CmiScorer for KnnScorer<'_> {
    fn n_features(&self) -> usize {
        self.ds.n_features()
    }

    fn task(&self) -> TaskKind {
        self.ds.task()
    }

    fn cmi(&self, feature: usize, context: &IndexSet) -> Result<CmiScore, SelectionError> {
        let with = self.mi_of(&context.with(feature))?;
        let without = self.mi_of(context)?;
        let raw = with - without;
        Ok(CmiScore {
            value: raw.max(0.0),
            clamped: raw < 0.0,
        })
    }

    fn estimator_echo(&self) -> Option<KnnConfig> {
        Some(self.cfg)
    }
}

/// Exact scorer over a tabulated joint: unobserved features are marginalized
/// out, then the single-feature CMI is summed exactly.
pub struct OracleScorer<'a> {
    joint: &'a TabularJoint,
}

impl<'a> OracleScorer<'a> {
    pub fn new(joint: &'a TabularJoint) -> Self {
        Self { joint }
    }
}

impl CmiScorer for OracleScorer<'_> {
    fn n_features(&self) -> usize {
        self.joint.n_features()
    }

    fn task(&self) -> TaskKind {
        match self.joint.target() {
            TargetSpace::Classes { count } => TaskKind::Classification { n_classes: *count },
            TargetSpace::Values { .. } => TaskKind::Regression {
                target_bound: self.joint.target().bound().expect("values target"),
            },
        }
    }

    fn cmi(&self, feature: usize, context: &IndexSet) -> Result<CmiScore, SelectionError> {
        let keep = context.with(feature);
        let marginal = self.joint.marginalize(&keep);
        let position = keep
            .as_slice()
            .binary_search(&feature)
            .expect("feature is in keep");
        Ok(CmiScore {
            value: marginal.exact_cmi(&IndexSet::new(vec![position])),
            clamped: false,
        })
    }
}
