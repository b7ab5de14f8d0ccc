//! Self-contained property suite: every bound and identity is exercised
//! against the exact oracle on seeded random joints. The CLI `verify`
//! subcommand prints these results; the acceptance tests call them directly.

use alloc::string::String;
use alloc::vec::Vec;


use crate::data::IndexSet;
use crate::oracle::{random_joint, random_joint_values, BoundKind, TabularJoint};
use crate::rng::SeededRng;
use crate::selection::{backward_eliminate, CmiScorer, OracleScorer, StoppingRule};

/// Outcome of one property run.
#[derive(Debug, Clone)]
pub struct PropertyCheck {
    pub name: String,
    pub pass: bool,
    /// Worst margin / largest deviation observed, plus the offending seed.
    pub detail: String,
}

impl PropertyCheck {
    fn pass(name: &str, detail: String) -> Self {
        Self {
            name: name.into(),
            pass: true,
            detail,
        }
    }

    fn fail(name: &str, detail: String) -> Self {
        Self {
            name: name.into(),
            pass: false,
            detail,
        }
    }
}

/// Classification removal bound over `n_joints` seeded Dirichlet joints
/// (three binary features, two classes), all `2^3` subsets each:
/// `bayes(rest) <= bayes(all) + sqrt(2 nu(A)) + 1e-12`.
pub fn classification_bound_check(n_joints: usize, seed: u64) -> PropertyCheck {
    let name = "classification-bound";
    let mut worst = f64::INFINITY;
    for i in 0..n_joints {
        let joint = random_joint(3, 2, 2, seed.wrapping_add(i as u64)).expect("valid params");
        let report = joint.verify_bounds();
        for check in &report.checks {
            if check.margin < worst {
                worst = check.margin;
            }
            if check.margin < -1e-12 {
                return PropertyCheck::fail(
                    name,
                    format!(
                        "joint seed {} subset {:?}: restricted {} > bound {}",
                        seed.wrapping_add(i as u64),
                        check.removed.as_slice(),
                        check.restricted_error,
                        check.bound
                    ),
                );
            }
        }
    }
    PropertyCheck::pass(
        name,
        format!("{n_joints} joints x 8 subsets, worst margin {worst:.3e}"),
    )
}

/// Regression removal bound with discrete real targets in `{-1, 0, 1}`
/// (`B = 1`): `mmse(rest) <= mmse(all) + 2 nu(A) + 1e-12`.
pub fn regression_bound_check(n_joints: usize, seed: u64) -> PropertyCheck {
    let name = "regression-bound";
    let mut worst = f64::INFINITY;
    for i in 0..n_joints {
        let joint = random_joint_values(3, 2, &[-1.0, 0.0, 1.0], seed.wrapping_add(i as u64))
            .expect("valid params");
        debug_assert!(matches!(
            joint.verify_bounds().kind,
            BoundKind::Regression { target_bound, .. } if target_bound == 1.0
        ));
        let report = joint.verify_bounds();
        for check in &report.checks {
            if check.margin < worst {
                worst = check.margin;
            }
            if check.margin < -1e-12 {
                return PropertyCheck::fail(
                    name,
                    format!(
                        "joint seed {} subset {:?}: restricted {} > bound {}",
                        seed.wrapping_add(i as u64),
                        check.removed.as_slice(),
                        check.restricted_error,
                        check.bound
                    ),
                );
            }
        }
    }
    PropertyCheck::pass(
        name,
        format!("{n_joints} joints x 8 subsets, worst margin {worst:.3e}"),
    )
}

/// Chain-rule telescoping: along random removal orders the partial sums of
/// single-feature CMIs must reproduce the removed-set score exactly
/// (within 1e-10) at every prefix.
pub fn telescoping_check(n_joints: usize, orders_per_joint: usize, seed: u64) -> PropertyCheck {
    let name = "telescoping";
    let d = 4usize;
    let mut worst = 0.0f64;
    for i in 0..n_joints {
        let joint_seed = seed.wrapping_add(i as u64);
        let joint = random_joint(d, 2, 2, joint_seed).expect("valid params");
        let scorer = OracleScorer::new(&joint);
        let mut rng = SeededRng::with_stream(seed, 1 + i as u64);
        for _ in 0..orders_per_joint {
            let mut order: Vec<usize> = (0..d).collect();
            rng.shuffle(&mut order);
            let mut remaining = IndexSet::full(d);
            let mut removed = IndexSet::empty();
            let mut cumulative = 0.0;
            for &feature in &order {
                let step = scorer
                    .cmi(feature, &remaining.without(feature))
                    .expect("oracle scorer is total");
                cumulative += step.value;
                remaining = remaining.without(feature);
                removed = removed.with(feature);
                let nu = joint.exact_cmi(&removed);
                let gap = (cumulative - nu).abs();
                if gap > worst {
                    worst = gap;
                }
                if gap > 1e-10 {
                    return PropertyCheck::fail(
                        name,
                        format!(
                            "joint seed {joint_seed} order {order:?}: prefix sum {cumulative} vs nu {nu}"
                        ),
                    );
                }
            }
        }
    }
    PropertyCheck::pass(
        name,
        format!("{n_joints} joints x {orders_per_joint} orders, worst gap {worst:.3e}"),
    )
}

/// End-to-end budget safety: backward elimination with the exact scorer and
/// budgets `delta` never leaves a selected set whose restricted Bayes error
/// exceeds `bayes(all) + delta + 1e-12`.
pub fn budget_safety_check(n_joints: usize, deltas: &[f64], seed: u64) -> PropertyCheck {
    let name = "budget-safety";
    let mut worst = f64::INFINITY;
    for i in 0..n_joints {
        let joint_seed = seed.wrapping_add(i as u64);
        let joint = random_joint(3, 2, 2, joint_seed).expect("valid params");
        let eps = joint.bayes_error(&joint.full_set()).expect("classes");
        let scorer = OracleScorer::new(&joint);
        for &delta in deltas {
            let trace = backward_eliminate(&scorer, &StoppingRule::ErrorBudget { delta })
                .expect("oracle run");
            let restricted = joint.bayes_error(&trace.selected).expect("classes");
            let margin = eps + delta - restricted;
            if margin < worst {
                worst = margin;
            }
            if margin < -1e-12 {
                return PropertyCheck::fail(
                    name,
                    format!(
                        "joint seed {joint_seed} delta {delta}: restricted {restricted} > {eps} + {delta}"
                    ),
                );
            }
        }
    }
    PropertyCheck::pass(
        name,
        format!(
            "{n_joints} joints x deltas {deltas:?}, worst margin {worst:.3e}"
        ),
    )
}

/// Runs a single externally supplied joint through the full subset check.
pub fn single_joint_check(joint: &TabularJoint) -> PropertyCheck {
    let name = "bound-check(file)";
    let report = joint.verify_bounds();
    let worst = report
        .checks
        .iter()
        .map(|c| c.margin)
        .fold(f64::INFINITY, f64::min);
    if report.all_pass {
        PropertyCheck::pass(name, format!("all subsets pass, worst margin {worst:.3e}"))
    } else {
        PropertyCheck::fail(name, format!("bound violated, worst margin {worst:.3e}"))
    }
}

/// The default suite: both bounds, telescoping, and budget safety.
pub fn run_default_suite(n_joints: usize, seed: u64) -> Vec<PropertyCheck> {
    vec![
        classification_bound_check(n_joints, seed),
        regression_bound_check(n_joints, seed.wrapping_add(0x1000)),
        telescoping_check(50.min(n_joints), 10, seed.wrapping_add(0x2000)),
        budget_safety_check(n_joints, &[0.0, 0.1, 0.3], seed.wrapping_add(0x3000)),
    ]
}
