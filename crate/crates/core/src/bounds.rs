//! Closed-form error bounds and the linear-model analysis behind them.
//!
//! Two scalar bounds quantify the ideal-error inflation caused by removing a
//! feature subset with score `nu`:
//!
//! * regression: `sigma^2 + 2 B^2 nu` (MSE scale),
//! * classification: `eps + sqrt(2 nu)` (error-rate scale).
//!
//! For *linear* models the CMI score can be arbitrarily over-optimistic, so
//! [`linear_subset_bound`] evaluates the correlation-based alternative: the
//! root-MSE of the best linear predictor without the features in `A` is at
//! most `sigma_{X->Y} + sqrt(|A|) * sum_i |w*_i| * sigma_{rest->X_i}`, where
//! `sigma_{rest->X_i}` is the root-MSE of linearly reconstructing `X_i` from
//! the remaining features. Note the absolute values: the weights enter the
//! derivation through a Cauchy-Schwarz step, so signed weights would let the
//! "bound" be shrunk arbitrarily by sign flips; we evaluate it with `|w*_i|`
//! (and `|rho(Y, X_i)|` in the uncorrelated variant) and document that here
//! rather than in every call site.

use num_traits::Float;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;


use crate::data::{Dataset, IndexSet, TaskKind};

/// Pairwise-correlation tolerance for the "uncorrelated features" premise.
pub const UNCORRELATED_TOLERANCE: f64 = 0.05;

#[derive(Debug, Clone, PartialEq)]
pub enum BoundsError {
    NegativeInput(&'static str),
    OutOfRange(&'static str),
    WrongTaskKind,
    SingularCovariance,
    ZeroVarianceColumn { columns: Vec<usize> },
    IndexOutOfRange { index: usize, dim: usize },
    TooFewSamples { n: usize },
}

impl fmt::Display for BoundsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundsError::NegativeInput(what) => write!(f, "negative input: {what}"),
            BoundsError::OutOfRange(what) => write!(f, "argument out of range: {what}"),
            BoundsError::WrongTaskKind => write!(f, "operation requires a regression target"),
            BoundsError::SingularCovariance => {
                write!(f, "covariance matrix is singular (even after ridge retry)")
            }
            BoundsError::ZeroVarianceColumn { columns } => {
                write!(f, "columns without variance: {columns:?}")
            }
            BoundsError::IndexOutOfRange { index, dim } => {
                write!(f, "feature index {index} out of range for dimension {dim}")
            }
            BoundsError::TooFewSamples { n } => {
                write!(f, "need at least 2 samples, got {n}")
            }
        }
    }
}

impl core::error::Error for BoundsError {}

/// `sigma^2 + 2 B^2 nu`: ideal-MSE bound after removing a subset of score `nu`.
pub fn regression_bound(sigma2: f64, target_bound: f64, nu: f64) -> Result<f64, BoundsError> {
    if !(sigma2 >= 0.0) || !sigma2.is_finite() {
        return Err(BoundsError::NegativeInput("sigma2"));
    }
    if !(target_bound > 0.0) || !target_bound.is_finite() {
        return Err(BoundsError::NegativeInput("target_bound"));
    }
    if !(nu >= 0.0) || !nu.is_finite() {
        return Err(BoundsError::NegativeInput("nu"));
    }
    Ok(sigma2 + 2.0 * target_bound * target_bound * nu)
}

/// `eps + sqrt(2 nu)`: Bayes-error bound after removing a subset of score
/// `nu`. The raw value may exceed 1; see [`classification_bound_clipped`].
pub fn classification_bound(eps: f64, nu: f64) -> Result<f64, BoundsError> {
    if !(0.0..=1.0).contains(&eps) {
        return Err(BoundsError::OutOfRange("eps must lie in [0, 1]"));
    }
    if !(nu >= 0.0) || !nu.is_finite() {
        return Err(BoundsError::OutOfRange("nu must be >= 0"));
    }
    Ok(eps + (2.0 * nu).sqrt())
}

/// Companion of [`classification_bound`] clipped to the error-rate range.
pub fn classification_bound_clipped(eps: f64, nu: f64) -> Result<f64, BoundsError> {
    classification_bound(eps, nu).map(|b| b.min(1.0))
}

/// Optimal linear least-squares fit found through the normal equations on
/// sample covariances (`1/(N-1)` convention throughout).
#[derive(Debug, Clone, PartialEq)]
pub struct LinearFit {
    /// One weight per fitted column, in the (sorted) order of the index set.
    pub weights: Vec<f64>,
    pub bias: f64,
    /// Closed-form minimum MSE `Var[Y] - Cov[Y,X] w`; equals the empirical
    /// residual mean square (same `1/(N-1)` normalization) up to rounding.
    pub mse: f64,
}

/// Gaussian elimination with partial pivoting; `None` when a pivot collapses.
fn solve_dense(mut a: Vec<f64>, mut b: Vec<f64>, n: usize) -> Option<Vec<f64>> {
    let scale = a
        .iter()
        .fold(0.0f64, |m, v| m.max(v.abs()))
        .max(f64::MIN_POSITIVE);
    let tol = scale * 1e-13;
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&r, &s| a[r * n + col].abs().total_cmp(&a[s * n + col].abs()))
            .unwrap();
        if a[pivot_row * n + col].abs() <= tol {
            return None;
        }
        if pivot_row != col {
            for k in 0..n {
                a.swap(col * n + k, pivot_row * n + k);
            }
            b.swap(col, pivot_row);
        }
        let pivot = a[col * n + col];
        for row in (col + 1)..n {
            let factor = a[row * n + col] / pivot;
            if factor == 0.0 {
                continue;
            }
            for k in col..n {
                a[row * n + k] -= factor * a[col * n + k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for col in (0..n).rev() {
        let mut acc = b[col];
        for k in (col + 1)..n {
            acc -= a[col * n + k] * x[k];
        }
        x[col] = acc / a[col * n + col];
    }
    Some(x)
}

struct CovData {
    cxx: Vec<f64>, // s x s, row-major
    cxy: Vec<f64>,
    mean_x: Vec<f64>,
    mean_y: f64,
    var_y: f64,
}

fn sample_cov(ds: &Dataset, cols: &[usize], target: &[f64]) -> Result<CovData, BoundsError> {
    let n = ds.n_rows();
    if n < 2 {
        return Err(BoundsError::TooFewSamples { n });
    }
    let s = cols.len();
    let mut mean_x = vec![0.0; s];
    let mut mean_y = 0.0;
    for r in 0..n {
        let row = ds.row(r);
        for (m, &c) in mean_x.iter_mut().zip(cols) {
            *m += row[c];
        }
        mean_y += target[r];
    }
    for m in &mut mean_x {
        *m /= n as f64;
    }
    mean_y /= n as f64;

    let mut cxx = vec![0.0; s * s];
    let mut cxy = vec![0.0; s];
    let mut var_y = 0.0;
    let mut centered = vec![0.0; s];
    for r in 0..n {
        let row = ds.row(r);
        for (slot, (&c, m)) in centered.iter_mut().zip(cols.iter().zip(&mean_x)) {
            *slot = row[c] - m;
        }
        let dy = target[r] - mean_y;
        var_y += dy * dy;
        for i in 0..s {
            cxy[i] += centered[i] * dy;
            for j in i..s {
                cxx[i * s + j] += centered[i] * centered[j];
            }
        }
    }
    let norm = (n - 1) as f64;
    for i in 0..s {
        cxy[i] /= norm;
        for j in i..s {
            cxx[i * s + j] /= norm;
            cxx[j * s + i] = cxx[i * s + j];
        }
    }
    var_y /= norm;
    Ok(CovData {
        cxx,
        cxy,
        mean_x,
        mean_y,
        var_y,
    })
}

fn fit_from_cov(cov: &CovData) -> Result<LinearFit, BoundsError> {
    let s = cov.mean_x.len();
    if s == 0 {
        return Ok(LinearFit {
            weights: Vec::new(),
            bias: cov.mean_y,
            mse: cov.var_y,
        });
    }
    let weights = match solve_dense(cov.cxx.clone(), cov.cxy.clone(), s) {
        Some(w) => w,
        None => {
            // ridge retry; the sample covariance can be singular on exactly
            // collinear columns
            let trace: f64 = (0..s).map(|i| cov.cxx[i * s + i]).sum();
            let lambda = 1e-8 * trace / s as f64;
            let mut a = cov.cxx.clone();
            for i in 0..s {
                a[i * s + i] += lambda;
            }
            solve_dense(a, cov.cxy.clone(), s).ok_or(BoundsError::SingularCovariance)?
        }
    };
    let explained: f64 = cov.cxy.iter().zip(&weights).map(|(c, w)| c * w).sum();
    let bias = cov.mean_y
        - cov
            .mean_x
            .iter()
            .zip(&weights)
            .map(|(m, w)| m * w)
            .sum::<f64>();
    Ok(LinearFit {
        weights,
        bias,
        mse: (cov.var_y - explained).max(0.0),
    })
}

fn fit_columns(ds: &Dataset, cols: &[usize], target: &[f64]) -> Result<LinearFit, BoundsError> {
    fit_from_cov(&sample_cov(ds, cols, target)?)
}

/// Minimum-MSE linear fit of the regression target on the columns in
/// `selected` (weights follow the sorted order of the set).
pub fn fit_linear_mmse(ds: &Dataset, selected: &IndexSet) -> Result<LinearFit, BoundsError> {
    let TaskKind::Regression { .. } = ds.task() else {
        return Err(BoundsError::WrongTaskKind);
    };
    validate_subset(selected, ds.n_features())?;
    let cols: Vec<usize> = selected.iter().collect();
    fit_columns(ds, &cols, &ds.target_values())
}

fn validate_subset(set: &IndexSet, dim: usize) -> Result<(), BoundsError> {
    if let Some(index) = set.iter().find(|&i| i >= dim) {
        return Err(BoundsError::IndexOutOfRange { index, dim });
    }
    Ok(())
}

/// Pearson correlation structure of a dataset: the `d x d` feature matrix
/// plus the feature/target correlation vector (class labels enter as their
/// numeric index).
#[derive(Debug, Clone, PartialEq)]
pub struct PearsonMatrix {
    pub dim: usize,
    /// Row-major `d x d`, symmetric, unit diagonal.
    pub values: Vec<f64>,
    pub target: Vec<f64>,
}

impl PearsonMatrix {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.dim + j]
    }
}

pub fn pearson_matrix(ds: &Dataset) -> Result<PearsonMatrix, BoundsError> {
    let d = ds.n_features();
    let target = ds.target_values();
    let cols: Vec<usize> = (0..d).collect();
    let cov = sample_cov(ds, &cols, &target)?;
    let degenerate: Vec<usize> = (0..d).filter(|&i| cov.cxx[i * d + i] <= 0.0).collect();
    if !degenerate.is_empty() {
        return Err(BoundsError::ZeroVarianceColumn {
            columns: degenerate,
        });
    }
    let mut values = vec![0.0; d * d];
    for i in 0..d {
        values[i * d + i] = 1.0;
        for j in (i + 1)..d {
            let r = cov.cxx[i * d + j] / (cov.cxx[i * d + i] * cov.cxx[j * d + j]).sqrt();
            values[i * d + j] = r;
            values[j * d + i] = r;
        }
    }
    let target_corr = if cov.var_y > 0.0 {
        (0..d)
            .map(|i| cov.cxy[i] / (cov.cxx[i * d + i] * cov.var_y).sqrt())
            .collect()
    } else {
        vec![0.0; d]
    };
    Ok(PearsonMatrix {
        dim: d,
        values,
        target: target_corr,
    })
}

/// Per-feature term of the linear removal bound.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureResidual {
    pub index: usize,
    pub name: String,
    /// Full-model weight `w*_i`.
    pub weight: f64,
    /// Root-MSE of reconstructing `X_i` linearly from the kept features.
    pub residual_std: f64,
}

/// Everything [`linear_subset_bound`] measures.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearBoundReport {
    pub removed: Vec<usize>,
    pub removed_names: Vec<String>,
    /// Root-MSE of the full-feature linear model, `sigma_{X->Y}`.
    pub sigma_full: f64,
    pub sigma_y: f64,
    /// Root-MSE-scale bound on the model without the removed features.
    pub general_bound: f64,
    /// The same bound squared, for direct comparison against MSE values.
    pub general_bound_squared: f64,
    /// Correlation-only variant; valid as a bound when `premise_satisfied`,
    /// reported (and flagged) regardless.
    pub uncorrelated_bound: f64,
    pub premise_satisfied: bool,
    pub per_feature: Vec<FeatureResidual>,
    pub pearson: PearsonMatrix,
}

/// Evaluates the linear removal bound for the feature subset `removed`.
pub fn linear_subset_bound(
    ds: &Dataset,
    removed: &IndexSet,
) -> Result<LinearBoundReport, BoundsError> {
    let TaskKind::Regression { .. } = ds.task() else {
        return Err(BoundsError::WrongTaskKind);
    };
    let d = ds.n_features();
    validate_subset(removed, d)?;
    let kept = removed.complement(d);
    let target = ds.target_values();

    let all: Vec<usize> = (0..d).collect();
    let full = fit_columns(ds, &all, &target)?;
    let sigma_full = full.mse.sqrt();

    let kept_cols: Vec<usize> = kept.iter().collect();
    let mut per_feature = Vec::with_capacity(removed.len());
    for i in removed.iter() {
        let reconstruction = fit_columns(ds, &kept_cols, &ds.column(i))?;
        per_feature.push(FeatureResidual {
            index: i,
            name: ds.feature_names()[i].clone(),
            weight: full.weights[i],
            residual_std: reconstruction.mse.sqrt(),
        });
    }

    let card = removed.len() as f64;
    let general_bound = sigma_full
        + card.sqrt()
            * per_feature
                .iter()
                .map(|t| t.weight.abs() * t.residual_std)
                .sum::<f64>();

    let pearson = pearson_matrix(ds)?;
    let y_values = ds.target_values();
    let mean_y = y_values.iter().sum::<f64>() / y_values.len() as f64;
    let sigma_y = (y_values
        .iter()
        .map(|y| (y - mean_y) * (y - mean_y))
        .sum::<f64>()
        / (y_values.len() - 1) as f64)
        .sqrt();

    let uncorrelated_bound = sigma_full
        + card.sqrt()
            * sigma_y
            * removed
                .iter()
                .map(|i| {
                    let cross: f64 = kept.iter().map(|j| pearson.get(i, j).powi(2)).sum();
                    pearson.target[i].abs() * (1.0 - cross).max(0.0).sqrt()
                })
                .sum::<f64>();

    let uncorrelated_within = |set: &IndexSet| {
        let ids: Vec<usize> = set.iter().collect();
        ids.iter().enumerate().all(|(a, &i)| {
            ids[a + 1..]
                .iter()
                .all(|&j| pearson.get(i, j).abs() <= UNCORRELATED_TOLERANCE)
        })
    };
    let premise_satisfied = uncorrelated_within(removed) && uncorrelated_within(&kept);

    Ok(LinearBoundReport {
        removed: removed.iter().collect(),
        removed_names: removed.iter().map(|i| ds.feature_names()[i].clone()).collect(),
        sigma_full,
        sigma_y,
        general_bound,
        general_bound_squared: general_bound * general_bound,
        uncorrelated_bound,
        premise_satisfied,
        per_feature,
        pearson,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{Dataset, Target};
    use alloc::string::ToString;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("x{}", i + 1)).collect()
    }

    fn dataset(cols: &[Vec<f64>], y: Vec<f64>) -> Dataset {
        let n = y.len();
        let d = cols.len();
        let mut features = Vec::with_capacity(n * d);
        for r in 0..n {
            for col in cols {
                features.push(col[r]);
            }
        }
        Dataset::new(features, names(d), Target::real_auto_bound(y)).unwrap()
    }

    #[test]
    fn scalar_bounds_arithmetic() {
        assert_eq!(regression_bound(0.3, 1.0, 0.0).unwrap(), 0.3);
        assert!((regression_bound(0.0, 2.0, 0.1).unwrap() - 0.8).abs() < 1e-15);
        assert!(regression_bound(-0.1, 1.0, 0.0).is_err());
        assert!(regression_bound(0.1, 0.0, 0.0).is_err());
        assert!(regression_bound(0.1, 1.0, -1e-9).is_err());

        assert_eq!(classification_bound(0.1, 0.0).unwrap(), 0.1);
        assert!((classification_bound(0.1, 0.02).unwrap() - 0.3).abs() < 1e-12);
        assert!(classification_bound(1.2, 0.0).is_err());
        assert!(classification_bound(0.5, -0.1).is_err());
        assert_eq!(classification_bound_clipped(0.9, 2.0).unwrap(), 1.0);
    }

    #[test]
    fn bounds_monotone_in_nu() {
        let mut prev_r = 0.0;
        let mut prev_c = 0.0;
        for step in 0..20 {
            let nu = step as f64 * 0.05;
            let r = regression_bound(0.2, 1.5, nu).unwrap();
            let c = classification_bound(0.1, nu).unwrap();
            if step > 0 {
                assert!(r > prev_r);
                assert!(c > prev_c);
            }
            prev_r = r;
            prev_c = c;
        }
    }

    #[test]
    fn exact_line_recovers_weights() {
        let x: Vec<f64> = (0..50).map(|i| i as f64 / 10.0).collect();
        let y: Vec<f64> = x.iter().map(|v| 2.0 * v + 1.0).collect();
        let ds = dataset(&[x], y);
        let fit = fit_linear_mmse(&ds, &IndexSet::full(1)).unwrap();
        assert!((fit.weights[0] - 2.0).abs() < 1e-9);
        assert!((fit.bias - 1.0).abs() < 1e-9);
        assert!(fit.mse <= 1e-9);
    }

    #[test]
    fn independent_target_has_zero_weights() {
        // deterministic "independent" columns: x cycles, y alternates in a
        // pattern with exactly zero sample covariance
        let x = vec![1.0, -1.0, 1.0, -1.0, 1.0, -1.0, 1.0, -1.0];
        let y = vec![1.0, 1.0, -1.0, -1.0, 1.0, 1.0, -1.0, -1.0];
        let var_y = y.iter().map(|v| v * v).sum::<f64>() / (y.len() - 1) as f64;
        let ds = dataset(&[x], y);
        let fit = fit_linear_mmse(&ds, &IndexSet::full(1)).unwrap();
        assert!(fit.weights[0].abs() < 1e-12);
        assert!((fit.mse - var_y).abs() < 1e-12);
    }

    #[test]
    fn closed_form_matches_empirical_residuals() {
        let mut rng = crate::rng::SeededRng::new(5);
        for _ in 0..5 {
            let n = 400;
            let cols: Vec<Vec<f64>> = (0..3)
                .map(|_| (0..n).map(|_| rng.normal()).collect())
                .collect();
            let y: Vec<f64> = (0..n)
                .map(|r| 0.7 * cols[0][r] - 1.3 * cols[1][r] + 0.2 * rng.normal())
                .collect();
            let ds = dataset(&cols, y.clone());
            let fit = fit_linear_mmse(&ds, &IndexSet::full(3)).unwrap();
            let mut rss = 0.0;
            for r in 0..n {
                let pred: f64 = fit
                    .weights
                    .iter()
                    .zip(ds.row(r))
                    .map(|(w, v)| w * v)
                    .sum::<f64>()
                    + fit.bias;
                let e = y[r] - pred;
                rss += e * e;
            }
            let empirical = rss / (n - 1) as f64;
            assert!(
                (fit.mse - empirical).abs() < 1e-8,
                "closed form {} vs empirical {}",
                fit.mse,
                empirical
            );
        }
    }

    #[test]
    fn noisy_sum_recovers_noise_floor() {
        // y = x1 + x2 + N(0, 0.01); averaged over seeds the fitted MSE must
        // sit near the noise variance
        let mut total = 0.0;
        let seeds = 5;
        for seed in 0..seeds {
            let mut rng = crate::rng::SeededRng::new(seed);
            let n = 10_000;
            let x1: Vec<f64> = (0..n).map(|_| rng.normal()).collect();
            let x2: Vec<f64> = (0..n).map(|_| rng.normal()).collect();
            let y: Vec<f64> = (0..n)
                .map(|r| x1[r] + x2[r] + 0.1 * rng.normal())
                .collect();
            let ds = dataset(&[x1, x2], y);
            total += fit_linear_mmse(&ds, &IndexSet::full(2)).unwrap().mse;
        }
        let mean = total / seeds as f64;
        assert!((mean - 0.01).abs() < 0.002, "mean mse {mean}");
    }

    #[test]
    fn mse_monotone_as_set_grows() {
        let mut rng = crate::rng::SeededRng::new(17);
        let n = 300;
        let cols: Vec<Vec<f64>> = (0..4)
            .map(|_| (0..n).map(|_| rng.normal()).collect())
            .collect();
        let y: Vec<f64> = (0..n)
            .map(|r| cols[0][r] - 0.5 * cols[2][r] + 0.3 * rng.normal())
            .collect();
        let ds = dataset(&cols, y);
        let mut prev = f64::INFINITY;
        let mut set = IndexSet::empty();
        for i in 0..4 {
            set = set.with(i);
            let mse = fit_linear_mmse(&ds, &set).unwrap().mse;
            assert!(mse <= prev + 1e-8, "adding col {i} raised mse");
            prev = mse;
        }
    }

    #[test]
    fn collinear_columns_fall_back_to_ridge() {
        let x: Vec<f64> = (0..40).map(|i| i as f64).collect();
        let x2 = x.clone(); // exact duplicate
        let y: Vec<f64> = x.iter().map(|v| 3.0 * v).collect();
        let ds = dataset(&[x, x2], y);
        let fit = fit_linear_mmse(&ds, &IndexSet::full(2)).unwrap();
        // ridge splits the weight across the duplicates; predictions stand
        assert!((fit.weights[0] + fit.weights[1] - 3.0).abs() < 1e-3);
        assert!(fit.mse < 1e-3);
    }

    #[test]
    fn wrong_task_is_rejected() {
        let ds = Dataset::new(
            vec![0.0, 1.0],
            names(1),
            Target::Class {
                labels: vec![0, 1],
                classes: vec!["a".to_string(), "b".to_string()],
            },
        )
        .unwrap();
        assert!(matches!(
            fit_linear_mmse(&ds, &IndexSet::full(1)),
            Err(BoundsError::WrongTaskKind)
        ));
        assert!(matches!(
            linear_subset_bound(&ds, &IndexSet::empty()),
            Err(BoundsError::WrongTaskKind)
        ));
    }

    #[test]
    fn pearson_basics() {
        let x1: Vec<f64> = (0..30).map(|i| i as f64).collect();
        let x2: Vec<f64> = x1.iter().map(|v| -v).collect();
        let y = x1.clone();
        let ds = dataset(&[x1, x2], y);
        let p = pearson_matrix(&ds).unwrap();
        assert!((p.get(0, 0) - 1.0).abs() < 1e-12);
        assert!((p.get(0, 1) + 1.0).abs() < 1e-12);
        assert!((p.get(1, 0) + 1.0).abs() < 1e-12);
        assert!((p.target[0] - 1.0).abs() < 1e-12);

        let constant = vec![2.0; 30];
        let ds = dataset(&[constant], (0..30).map(|i| i as f64).collect());
        assert!(matches!(
            pearson_matrix(&ds),
            Err(BoundsError::ZeroVarianceColumn { columns }) if columns == vec![0]
        ));
    }

    #[test]
    fn empty_removal_collapses_to_full_sigma() {
        let mut rng = crate::rng::SeededRng::new(3);
        let n = 200;
        let cols: Vec<Vec<f64>> = (0..3)
            .map(|_| (0..n).map(|_| rng.normal()).collect())
            .collect();
        let y: Vec<f64> = (0..n).map(|r| cols[1][r] + 0.5 * rng.normal()).collect();
        let ds = dataset(&cols, y);
        let report = linear_subset_bound(&ds, &IndexSet::empty()).unwrap();
        assert_eq!(report.general_bound, report.sigma_full);
        assert!(report.per_feature.is_empty());
    }

    #[test]
    fn orthogonal_design_bound_reduces_to_weight() {
        // full +-1 factorial in 3 columns: sample correlations are exactly 0
        let mut cols = vec![Vec::new(), Vec::new(), Vec::new()];
        for row in 0..8u32 {
            for c in 0..3 {
                cols[c].push(if row & (1 << c) != 0 { 1.0 } else { -1.0 });
            }
        }
        let y: Vec<f64> = (0..8)
            .map(|r| 2.0 * cols[0][r] + cols[1][r] - cols[2][r])
            .collect();
        let ds = dataset(&cols, y);
        let report = linear_subset_bound(&ds, &IndexSet::new(vec![0])).unwrap();
        // sigma_full ~ 0 (noiseless, up to sqrt of rounding residue) and the
        // orthogonal reconstruction residual is the column deviation itself,
        // sqrt(8/7) under the 1/(N-1) convention. Both bound routes then
        // collapse to |w_1| * sigma_{X1} = sigma_Y * |rho(Y, X1)|.
        let expected = 2.0 * (8.0f64 / 7.0).sqrt();
        assert!(report.sigma_full < 1e-6);
        assert!((report.general_bound - expected).abs() < 1e-6);
        assert!((report.uncorrelated_bound - expected).abs() < 1e-6);
        assert!(report.premise_satisfied);
    }
}
