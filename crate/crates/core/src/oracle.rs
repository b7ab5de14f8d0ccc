//! Exact ground truth on small tabulated joints.
//!
//! [`TabularJoint`] stores the full probability mass function of a few small
//! discrete features together with a discrete target, so conditional mutual
//! information, Bayes error and restricted minimum-MSE can be computed by
//! plain summation, with no estimation involved. This is the referee every
//! bound and every greedy trace is checked against.
//!
//! Dimensions are deliberately capped (`d <= 5`, arity `<= 4`, target size
//! `<= 4`): full subset enumeration then touches at most `2^5` subsets of at
//! most `4^5 * 4` cells, which is instantaneous.

use num_traits::Float;

use alloc::vec::Vec;
use core::fmt;


use crate::data::IndexSet;
use crate::rng::SeededRng;

pub const MAX_FEATURES: usize = 5;
pub const MAX_ARITY: usize = 4;
pub const MAX_TARGET: usize = 4;

const PMF_TOLERANCE: f64 = 1e-12;

/// Target side of a [`TabularJoint`].
#[derive(Debug, Clone, PartialEq)]
pub enum TargetSpace {
    /// `count` classes, labelled `0..count`.
    Classes { count: usize },
    /// Discrete real values; the bound `B = max |y|` is exact by construction.
    Values { values: Vec<f64> },
}

impl TargetSpace {
    pub fn len(&self) -> usize {
        match self {
            TargetSpace::Classes { count } => *count,
            TargetSpace::Values { values } => values.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `max |y|` for value targets.
    pub fn bound(&self) -> Option<f64> {
        match self {
            TargetSpace::Classes { .. } => None,
            TargetSpace::Values { values } => {
                Some(values.iter().fold(0.0f64, |m, v| m.max(v.abs())))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum OracleError {
    OutOfRange(&'static str),
    NotNormalized { total: f64 },
    NegativeMass { cell: usize },
    WrongTaskKind,
    WrongCellCount { expected: usize, got: usize },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::OutOfRange(what) => write!(f, "argument out of range: {what}"),
            OracleError::NotNormalized { total } =>

                write!(f, "pmf sums to {total}, expected 1 within {PMF_TOLERANCE}"),
            OracleError::NegativeMass { cell } => write!(f, "negative probability at cell {cell}"),
            OracleError::WrongTaskKind => write!(f, "operation not defined for this target kind"),
            OracleError::WrongCellCount { expected, got } => {
                write!(f, "pmf has {got} cells, expected {expected}")
            }
        }
    }
}

impl core::error::Error for OracleError {}

/// Exact joint distribution over a small feature/target grid.
///
/// Cells are laid out target-minor: `pmf[x_flat * ny + y]`, with `x_flat`
/// mixed-radix over the feature arities, first feature least significant.
#[derive(Debug, Clone, PartialEq)]
pub struct TabularJoint {
    arities: Vec<usize>,
    target: TargetSpace,
    pmf: Vec<f64>,
}

impl TabularJoint {
    pub fn new(
        arities: Vec<usize>,
        target: TargetSpace,
        pmf: Vec<f64>,
    ) -> Result<Self, OracleError> {
        if arities.is_empty() || arities.len() > MAX_FEATURES {
            return Err(OracleError::OutOfRange("feature count must be in 1..=5"));
        }
        if arities.iter().any(|&a| a == 0 || a > MAX_ARITY) {
            return Err(OracleError::OutOfRange("feature arity must be in 1..=4"));
        }
        let ny = target.len();
        if ny < 2 || ny > MAX_TARGET {
            return Err(OracleError::OutOfRange("target size must be in 2..=4"));
        }
        if let TargetSpace::Values { values } = &target {
            if values.iter().any(|v| !v.is_finite()) {
                return Err(OracleError::OutOfRange("target values must be finite"));
            }
        }
        let nx: usize = arities.iter().product();
        if pmf.len() != nx * ny {
            return Err(OracleError::WrongCellCount {
                expected: nx * ny,
                got: pmf.len(),
            });
        }
        if let Some(cell) = pmf.iter().position(|&p| p < 0.0 || !p.is_finite()) {
            return Err(OracleError::NegativeMass { cell });
        }
        let total: f64 = pmf.iter().sum();
        if (total - 1.0).abs() > PMF_TOLERANCE {
            return Err(OracleError::NotNormalized { total });
        }
        Ok(Self {
            arities,
            target,
            pmf,
        })
    }

    pub fn n_features(&self) -> usize {
        self.arities.len()
    }

    pub fn arities(&self) -> &[usize] {
        &self.arities
    }

    pub fn target(&self) -> &TargetSpace {
        &self.target
    }

    pub fn pmf(&self) -> &[f64] {
        &self.pmf
    }

    pub fn full_set(&self) -> IndexSet {
        IndexSet::full(self.arities.len())
    }

    fn n_cells_x(&self) -> usize {
        self.arities.iter().product()
    }

    /// Flat-index projection table onto the features in `keep` (sorted).
    fn projection(&self, keep: &IndexSet) -> (Vec<usize>, usize) {
        let kept: Vec<usize> = keep.iter().collect();
        let mut kept_size = 1usize;
        for &c in &kept {
            kept_size *= self.arities[c];
        }
        let nx = self.n_cells_x();
        let mut table = vec![0usize; nx];
        for (x, slot) in table.iter_mut().enumerate() {
            let mut rem = x;
            let mut digits = [0usize; MAX_FEATURES];
            for (i, &a) in self.arities.iter().enumerate() {
                digits[i] = rem % a;
                rem /= a;
            }
            let mut proj = 0usize;
            let mut stride = 1usize;
            for &c in &kept {
                proj += digits[c] * stride;
                stride *= self.arities[c];
            }
            *slot = proj;
        }
        (table, kept_size)
    }

    /// Exact score `nu(A) = I(Y; X_A | X_complement)` in nats.
    ///
    /// Summation runs over positive-mass cells only, so conditionals are never
    /// evaluated on zero-probability events and `0 log 0` never arises. Tiny
    /// negative rounding residue is clamped to zero.
    pub fn exact_cmi(&self, removed: &IndexSet) -> f64 {
        let ny = self.target.len();
        let nx = self.n_cells_x();
        let kept = removed.complement(self.arities.len());
        let (proj, n_kept) = self.projection(&kept);

        let mut p_x = vec![0.0f64; nx];
        let mut p_keep = vec![0.0f64; n_kept];
        let mut p_keep_y = vec![0.0f64; n_kept * ny];
        for x in 0..nx {
            let base = x * ny;
            for y in 0..ny {
                let p = self.pmf[base + y];
                p_x[x] += p;
                p_keep_y[proj[x] * ny + y] += p;
            }
            p_keep[proj[x]] += p_x[x];
        }

        let mut nu = 0.0f64;
        for x in 0..nx {
            let base = x * ny;
            for y in 0..ny {
                let p = self.pmf[base + y];
                if p > 0.0 {
                    let ratio = (p * p_keep[proj[x]]) / (p_x[x] * p_keep_y[proj[x] * ny + y]);
                    nu += p * ratio.ln();
                }
            }
        }
        debug_assert!(nu > -1e-12, "exact CMI below rounding floor: {nu}");
        if nu < 0.0 {
            0.0
        } else {
            nu
        }
    }

    /// Bayes error of the maximum-a-posteriori classifier that observes only
    /// the features in `observed`. The full set gives the irreducible error.
    pub fn bayes_error(&self, observed: &IndexSet) -> Result<f64, OracleError> {
        if !matches!(self.target, TargetSpace::Classes { .. }) {
            return Err(OracleError::WrongTaskKind);
        }
        let ny = self.target.len();
        let (proj, n_obs) = self.projection(observed);
        let mut table = vec![0.0f64; n_obs * ny];
        for x in 0..self.n_cells_x() {
            for y in 0..ny {
                table[proj[x] * ny + y] += self.pmf[x * ny + y];
            }
        }
        let mut correct = 0.0f64;
        for cell in table.chunks(ny) {
            correct += cell.iter().fold(0.0f64, |m, &p| m.max(p));
        }
        Ok((1.0 - correct).max(0.0))
    }

    /// Minimum MSE `E[(Y - E[Y | X_observed])^2]`, exact. The full set gives
    /// the irreducible error, the empty set gives `Var[Y]`.
    pub fn mmse_error(&self, observed: &IndexSet) -> Result<f64, OracleError> {
        let values = match &self.target {
            TargetSpace::Values { values } => values,
            TargetSpace::Classes { .. } => return Err(OracleError::WrongTaskKind),
        };
        let ny = values.len();
        let (proj, n_obs) = self.projection(observed);
        let mut mass = vec![0.0f64; n_obs];
        let mut first_moment = vec![0.0f64; n_obs];
        let mut ey2 = 0.0f64;
        for x in 0..self.n_cells_x() {
            for (y, &value) in values.iter().enumerate() {
                let p = self.pmf[x * ny + y];
                ey2 += p * value * value;
                mass[proj[x]] += p;
                first_moment[proj[x]] += p * value;
            }
        }
        let mut explained = 0.0f64;
        for (m, s) in mass.iter().zip(&first_moment) {
            if *m > 0.0 {
                explained += s * s / m;
            }
        }
        Ok((ey2 - explained).max(0.0))
    }

    /// Sums out every feature not in `keep`; the result is indexed by the
    /// kept features in their sorted order.
    pub fn marginalize(&self, keep: &IndexSet) -> TabularJoint {
        let ny = self.target.len();
        let (proj, n_kept) = self.projection(keep);
        let mut pmf = vec![0.0f64; n_kept * ny];
        for x in 0..self.n_cells_x() {
            for y in 0..ny {
                pmf[proj[x] * ny + y] += self.pmf[x * ny + y];
            }
        }
        let arities = if keep.is_empty() {
            // a single dummy feature of arity 1 keeps the layout valid
            vec![1]
        } else {
            keep.iter().map(|c| self.arities[c]).collect()
        };
        TabularJoint {
            arities,
            target: self.target.clone(),
            pmf,
        }
    }

    /// Checks both removal bounds on every subset `A` of the features:
    /// restricted error of the complement against `floor + penalty(nu(A))`.
    pub fn verify_bounds(&self) -> BoundReport {
        let d = self.arities.len();
        let full = self.full_set();
        let kind = match &self.target {
            TargetSpace::Classes { .. } => BoundKind::Classification {
                bayes_error: self.bayes_error(&full).expect("classes target"),
            },
            TargetSpace::Values { values: _ } => BoundKind::Regression {
                irreducible: self.mmse_error(&full).expect("values target"),
                target_bound: self.target.bound().expect("values target"),
            },
        };
        let mut checks = Vec::with_capacity(1 << d);
        for mask in 0u32..(1 << d) {
            let removed = IndexSet::new(
                (0..d).filter(|i| mask & (1 << i) != 0).collect(),
            );
            let kept = removed.complement(d);
            let nu = self.exact_cmi(&removed);
            let (restricted, bound) = match kind {
                BoundKind::Classification { bayes_error } => {
                    let restricted = self.bayes_error(&kept).expect("classes target");
                    (restricted, bayes_error + (2.0 * nu).sqrt())
                }
                BoundKind::Regression {
                    irreducible,
                    target_bound,
                } => {
                    let restricted = self.mmse_error(&kept).expect("values target");
                    (
                        restricted,
                        irreducible + 2.0 * target_bound * target_bound * nu,
                    )
                }
            };
            checks.push(SubsetCheck {
                removed,
                nu,
                restricted_error: restricted,
                bound,
                margin: bound - restricted,
            });
        }
        let all_pass = checks.iter().all(|c| c.margin >= -PMF_TOLERANCE);
        BoundReport {
            kind,
            checks,
            all_pass,
        }
    }
}

/// Which theorem a [`BoundReport`] exercised, with its error floor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundKind {
    Classification { bayes_error: f64 },
    Regression { irreducible: f64, target_bound: f64 },
}

/// One subset check inside a [`BoundReport`].
#[derive(Debug, Clone)]
pub struct SubsetCheck {
    pub removed: IndexSet,
    pub nu: f64,
    pub restricted_error: f64,
    pub bound: f64,
    /// `bound - restricted_error`; the check passes when this is >= -1e-12.
    pub margin: f64,
}

/// Outcome of [`TabularJoint::verify_bounds`].
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub checks: Vec<SubsetCheck>,
    pub all_pass: bool,
}

/// Random joint with class targets: every cell drawn from a symmetric
/// Dirichlet with concentration 1 (i.i.d. Exponential(1), normalized).
pub fn random_joint(
    d: usize,
    arity: usize,
    n_classes: usize,
    seed: u64,
) -> Result<TabularJoint, OracleError> {
    if d == 0 || d > MAX_FEATURES {
        return Err(OracleError::OutOfRange("d must be in 1..=5"));
    }
    if arity == 0 || arity > 3 {
        return Err(OracleError::OutOfRange("arity must be in 1..=3"));
    }
    if n_classes < 2 || n_classes > 3 {
        return Err(OracleError::OutOfRange("class count must be 2 or 3"));
    }
    let target = TargetSpace::Classes { count: n_classes };
    dirichlet_joint(d, arity, target, seed)
}

/// Random joint with discrete real target values (for the regression bound).
pub fn random_joint_values(
    d: usize,
    arity: usize,
    values: &[f64],
    seed: u64,
) -> Result<TabularJoint, OracleError> {
    if d == 0 || d > MAX_FEATURES {
        return Err(OracleError::OutOfRange("d must be in 1..=5"));
    }
    if arity == 0 || arity > 3 {
        return Err(OracleError::OutOfRange("arity must be in 1..=3"));
    }
    if values.len() < 2 || values.len() > MAX_TARGET {
        return Err(OracleError::OutOfRange("need 2..=4 target values"));
    }
    let target = TargetSpace::Values {
        values: values.to_vec(),
    };
    dirichlet_joint(d, arity, target, seed)
}

fn dirichlet_joint(
    d: usize,
    arity: usize,
    target: TargetSpace,
    seed: u64,
) -> Result<TabularJoint, OracleError> {
    let cells = arity.pow(d as u32) * target.len();
    let mut rng = SeededRng::new(seed);
    let mut pmf: Vec<f64> = (0..cells).map(|_| rng.exponential()).collect();
    let total: f64 = pmf.iter().sum();
    for p in &mut pmf {
        *p /= total;
    }
    // renormalize the largest cell so the sum is exactly as close to 1 as
    // f64 allows; Dirichlet(1) is unaffected by this measure-zero tweak
    let drift: f64 = pmf.iter().sum::<f64>() - 1.0;
    if drift != 0.0 {
        let argmax = pmf
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .unwrap();
        pmf[argmax] -= drift;
    }
    TabularJoint::new(vec![arity; d], target, pmf)
}

/// XOR joint: two fair independent bits and `Y = X1 xor X2`. A classic
/// fixture where every single feature is individually useless.
pub fn xor_joint() -> TabularJoint {
    let mut pmf = vec![0.0; 8];
    for x1 in 0..2usize {
        for x2 in 0..2usize {
            let y = x1 ^ x2;
            let x_flat = x1 + 2 * x2;
            pmf[x_flat * 2 + y] = 0.25;
        }
    }
    TabularJoint::new(vec![2, 2], TargetSpace::Classes { count: 2 }, pmf).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    const LN2: f64 = core::f64::consts::LN_2;

    /// MI through the entropy route `H(Y) - H(Y|X)`, written independently of
    /// `exact_cmi` as a cross-check of the full-removal case.
    fn mi_via_entropies(j: &TabularJoint) -> f64 {
        let ny = j.target().len();
        let nx: usize = j.arities().iter().product();
        let mut p_y = vec![0.0f64; ny];
        let mut p_x = vec![0.0f64; nx];
        for x in 0..nx {
            for y in 0..ny {
                let p = j.pmf()[x * ny + y];
                p_y[y] += p;
                p_x[x] += p;
            }
        }
        let h_y: f64 = p_y
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| -p * p.ln())
            .sum();
        let mut h_y_given_x = 0.0;
        for x in 0..nx {
            if p_x[x] > 0.0 {
                for y in 0..ny {
                    let p = j.pmf()[x * ny + y];
                    if p > 0.0 {
                        h_y_given_x -= p * (p / p_x[x]).ln();
                    }
                }
            }
        }
        h_y - h_y_given_x
    }

    /// Y = X1, X2 an exact copy of X1 (fair bit).
    fn copy_joint() -> TabularJoint {
        let mut pmf = vec![0.0; 8];
        for x1 in 0..2usize {
            let x_flat = x1 + 2 * x1;
            pmf[x_flat * 2 + x1] = 0.5;
        }
        TabularJoint::new(vec![2, 2], TargetSpace::Classes { count: 2 }, pmf).unwrap()
    }

    #[test]
    fn construction_rejects_bad_pmf() {
        let r = TabularJoint::new(
            vec![2],
            TargetSpace::Classes { count: 2 },
            vec![0.5, 0.6, 0.0, 0.0],
        );
        assert!(matches!(r, Err(OracleError::NotNormalized { .. })));
        let r = TabularJoint::new(
            vec![2],
            TargetSpace::Classes { count: 2 },
            vec![1.2, -0.2, 0.0, 0.0],
        );
        assert!(matches!(r, Err(OracleError::NegativeMass { .. })));
        let r = TabularJoint::new(vec![2], TargetSpace::Classes { count: 2 }, vec![0.5, 0.5]);
        assert!(matches!(r, Err(OracleError::WrongCellCount { .. })));
    }

    #[test]
    fn xor_cmi_values() {
        let j = xor_joint();
        assert_eq!(j.exact_cmi(&IndexSet::empty()), 0.0);
        assert!((j.exact_cmi(&IndexSet::new(vec![0])) - LN2).abs() < 1e-12);
        assert!((j.exact_cmi(&IndexSet::new(vec![1])) - LN2).abs() < 1e-12);
        // both bits together carry exactly H(Y) = ln 2
        assert!((j.exact_cmi(&j.full_set()) - LN2).abs() < 1e-12);
    }

    #[test]
    fn redundant_copy_scores_zero_exactly() {
        let j = copy_joint();
        assert_eq!(j.exact_cmi(&IndexSet::new(vec![1])), 0.0);
        assert_eq!(j.exact_cmi(&IndexSet::new(vec![0])), 0.0);
    }

    #[test]
    fn bayes_error_cases() {
        let j = xor_joint();
        assert!((j.bayes_error(&IndexSet::new(vec![0])).unwrap() - 0.5).abs() < 1e-12);
        assert!(j.bayes_error(&j.full_set()).unwrap().abs() < 1e-12);
        assert!((j.bayes_error(&IndexSet::empty()).unwrap() - 0.5).abs() < 1e-12);
        // deterministic target given the observed feature
        let copy = copy_joint();
        assert!(copy.bayes_error(&IndexSet::new(vec![1])).unwrap().abs() < 1e-12);
    }

    #[test]
    fn mmse_error_cases() {
        // Y uniform on {-1, +1}, independent of one binary feature
        let j = TabularJoint::new(
            vec![2],
            TargetSpace::Values {
                values: vec![-1.0, 1.0],
            },
            vec![0.25, 0.25, 0.25, 0.25],
        )
        .unwrap();
        assert!((j.mmse_error(&IndexSet::empty()).unwrap() - 1.0).abs() < 1e-12);
        assert!((j.mmse_error(&j.full_set()).unwrap() - 1.0).abs() < 1e-12);

        // Y a deterministic function of the feature
        let det = TabularJoint::new(
            vec![2],
            TargetSpace::Values {
                values: vec![-1.0, 1.0],
            },
            vec![0.5, 0.0, 0.0, 0.5],
        )
        .unwrap();
        assert!(det.mmse_error(&det.full_set()).unwrap().abs() < 1e-12);
        // Var[Y] = 1 when nothing is observed
        assert!((det.mmse_error(&IndexSet::empty()).unwrap() - 1.0).abs() < 1e-12);
        assert!(matches!(
            xor_joint().mmse_error(&IndexSet::empty()),
            Err(OracleError::WrongTaskKind)
        ));
        assert!(matches!(
            det.bayes_error(&IndexSet::empty()),
            Err(OracleError::WrongTaskKind)
        ));
    }

    #[test]
    fn random_joint_is_deterministic_and_normalized() {
        let a = random_joint(3, 2, 2, 99).unwrap();
        let b = random_joint(3, 2, 2, 99).unwrap();
        assert_eq!(a.pmf(), b.pmf());
        assert_eq!(a.pmf().len(), 16);
        let total: f64 = a.pmf().iter().sum();
        assert!((total - 1.0).abs() <= 1e-12);
        assert!(random_joint(6, 2, 2, 1).is_err());
        assert!(random_joint(2, 4, 2, 1).is_err());
        assert!(random_joint(2, 2, 5, 1).is_err());
    }

    #[test]
    fn mi_matches_entropy_route() {
        for seed in 0..50 {
            let j = random_joint(3, 3, 3, seed).unwrap();
            let direct = j.exact_cmi(&j.full_set());
            let via_h = mi_via_entropies(&j);
            assert!(
                (direct - via_h).abs() < 1e-12,
                "seed {seed}: {direct} vs {via_h}"
            );
        }
    }

    #[test]
    fn data_processing_inequality_holds() {
        for seed in 0..50 {
            let j = random_joint(3, 2, 2, seed).unwrap();
            let total = j.exact_cmi(&j.full_set());
            for mask in 0u32..8 {
                let removed =
                    IndexSet::new((0..3).filter(|i| mask & (1 << i) != 0).collect());
                assert!(j.exact_cmi(&removed) <= total + 1e-12);
            }
        }
    }

    #[test]
    fn verify_bounds_on_xor() {
        let j = xor_joint();
        let report = j.verify_bounds();
        assert!(report.all_pass);
        // removing one bit: restricted error 0.5 <= 0 + sqrt(2 ln 2) = 1.177
        let single = report
            .checks
            .iter()
            .find(|c| c.removed.as_slice() == [0])
            .unwrap();
        assert!((single.nu - LN2).abs() < 1e-12);
        assert!((single.restricted_error - 0.5).abs() < 1e-12);
        assert!((single.bound - (2.0 * LN2).sqrt()).abs() < 1e-12);
        assert!((single.bound - 1.1774100226).abs() < 1e-9);
    }

    #[test]
    fn marginalize_consistency() {
        for seed in 0..20 {
            let j = random_joint(4, 2, 2, seed).unwrap();
            let keep = IndexSet::new(vec![1, 3]);
            let m = j.marginalize(&keep);
            let full_on_m = m.bayes_error(&m.full_set()).unwrap();
            let restricted = j.bayes_error(&keep).unwrap();
            assert!((full_on_m - restricted).abs() < 1e-12);
        }
    }
}
