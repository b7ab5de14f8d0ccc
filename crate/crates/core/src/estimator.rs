//! Mixed discrete/continuous k-nearest-neighbor mutual information.
//!
//! For each sample `i`, let `rho_i` be the distance (max-norm over the joint
//! `(x, y)` coordinates) to its k-th nearest neighbor. On continuous data
//! (`rho_i > 0`) the classic KSG bookkeeping applies: count marginal
//! neighbors strictly inside `rho_i`. On a mass point (`rho_i = 0`, i.e. at
//! least `k` exact duplicates in the joint space) the neighbor count adapts:
//! `k_i` becomes the number of samples at joint distance zero and the
//! marginal counts use distance zero as well. The estimate is
//!
//! ```text
//! I = psi(N) + mean_i [ psi(k_i) - psi(n_x[i] + 1) - psi(n_y[i] + 1) ]
//! ```
//!
//! clamped at zero. With no mass points this is exactly the KSG estimator.
//!
//! Distances of zero are detected with an absolute `tie_epsilon`; marginal
//! counting for continuous radii is strict (`< rho_i`), which is the variant
//! fixed for this crate.
//!
//! Below [`INDEX_THRESHOLD`] samples the neighbor statistics come from a
//! quadratic scan; above it a max-norm k-d tree takes over. The two paths are
//! bit-identical by construction (see `kdtree`), so the cutoff is purely a
//! performance knob.

use alloc::vec::Vec;
use core::fmt;

use crate::kdtree::{chebyshev, KdTree};
use crate::math::digamma;

/// Sample count at which `Backend::Auto` switches to the spatial index.
pub const INDEX_THRESHOLD: usize = 4096;

/// Neighbor-search implementation selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Backend {
    #[default]
    Auto,
    BruteForce,
    KdTree,
}

/// Estimator configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KnnConfig {
    /// Neighbor count; must stay below the sample count.
    pub k: usize,
    /// Absolute tolerance for distance-equality tests.
    pub tie_epsilon: f64,
    pub backend: Backend,
}

impl Default for KnnConfig {
    fn default() -> Self {
        Self {
            k: 3,
            tie_epsilon: 1e-12,
            backend: Backend::Auto,
        }
    }
}

impl KnnConfig {
    pub fn with_k(k: usize) -> Self {
        Self {
            k,
            ..Self::default()
        }
    }

    /// Default neighbor rule `k = max(3, floor(0.05 n))`: a fixed fraction of
    /// the sample size, floored for small data.
    pub fn auto(n: usize) -> Self {
        Self::with_k((n / 20).max(3))
    }
}

/// Borrowed row-major sample block.
#[derive(Debug, Clone, Copy)]
pub struct SampleBlock<'a> {
    data: &'a [f64],
    n: usize,
    dim: usize,
}

impl<'a> SampleBlock<'a> {
    pub fn new(data: &'a [f64], n: usize, dim: usize) -> Result<Self, EstimatorError> {
        if data.len() != n * dim {
            return Err(EstimatorError::ShapeMismatch {
                expected: n * dim,
                got: data.len(),
            });
        }
        Ok(Self { data, n, dim })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum EstimatorError {
    TooFewSamples { n: usize, k: usize },
    ShapeMismatch { expected: usize, got: usize },
    SampleCountMismatch { left: usize, right: usize },
}

impl fmt::Display for EstimatorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EstimatorError::TooFewSamples { n, k } => {
                write!(f, "need more than k = {k} samples, got {n}")
            }
            EstimatorError::ShapeMismatch { expected, got } => {
                write!(f, "sample block holds {got} values, expected {expected}")
            }
            EstimatorError::SampleCountMismatch { left, right } => {
                write!(f, "blocks disagree on sample count: {left} vs {right}")
            }
        }
    }
}

impl core::error::Error for EstimatorError {}

/// A mutual-information estimate in nats.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MiEstimate {
    /// Non-negative estimate (raw value clamped at zero).
    pub value: f64,
    pub n_samples: usize,
    pub k_used: usize,
    /// True when the raw estimate was negative and got clamped.
    pub clamped: bool,
}

fn exact_zero(n: usize, k: usize) -> MiEstimate {
    MiEstimate {
        value: 0.0,
        n_samples: n,
        k_used: k,
        clamped: false,
    }
}

/// Estimates `I(X; Y)` between two sample blocks. Either block may hold
/// discrete values (mass points are handled without perturbation); an empty
/// block yields an exact zero.
pub fn knn_mi(
    x: &SampleBlock<'_>,
    y: &SampleBlock<'_>,
    cfg: &KnnConfig,
) -> Result<MiEstimate, EstimatorError> {
    if x.n != y.n {
        return Err(EstimatorError::SampleCountMismatch {
            left: x.n,
            right: y.n,
        });
    }
    let n = x.n;
    if x.dim == 0 || y.dim == 0 {
        return Ok(exact_zero(n, cfg.k));
    }
    if n <= cfg.k || cfg.k == 0 {
        return Err(EstimatorError::TooFewSamples { n, k: cfg.k });
    }
    let use_tree = match cfg.backend {
        Backend::BruteForce => false,
        Backend::KdTree => true,
        Backend::Auto => n >= INDEX_THRESHOLD,
    };
    let mut terms = if use_tree {
        tree_terms(x, y, cfg)
    } else {
        brute_terms(x, y, cfg)
    };
    // sorted summation: permutation-invariant and independent of the backend
    terms.sort_by(f64::total_cmp);
    let mean = terms.iter().sum::<f64>() / n as f64;
    let raw = digamma(n as f64).expect("n >= 1") + mean;
    Ok(MiEstimate {
        value: raw.max(0.0),
        n_samples: n,
        k_used: cfg.k,
        clamped: raw < 0.0,
    })
}

fn sample_term(k_i: usize, n_x: usize, n_y: usize) -> f64 {
    digamma(k_i as f64).expect("k_i >= 1")
        - digamma((n_x + 1) as f64).expect("positive")
        - digamma((n_y + 1) as f64).expect("positive")
}

fn brute_terms(x: &SampleBlock<'_>, y: &SampleBlock<'_>, cfg: &KnnConfig) -> Vec<f64> {
    let n = x.n;
    let eps = cfg.tie_epsilon;
    let mut dx = vec![0.0f64; n];
    let mut dy = vec![0.0f64; n];
    let mut dj = vec![0.0f64; n];
    let mut sel = vec![0.0f64; n];
    let mut terms = Vec::with_capacity(n);
    for i in 0..n {
        let xi = x.row(i);
        let yi = y.row(i);
        for j in 0..n {
            let a = chebyshev(xi, x.row(j));
            let b = chebyshev(yi, y.row(j));
            dx[j] = a;
            dy[j] = b;
            dj[j] = if a > b { a } else { b };
        }
        sel.copy_from_slice(&dj);
        sel[i] = f64::INFINITY; // exclude self from the neighbor pool
        sel.select_nth_unstable_by(cfg.k - 1, f64::total_cmp);
        let rho = sel[cfg.k - 1];

        let (k_i, n_x, n_y) = if rho <= eps {
            let mut kj = 0;
            let mut cx = 0;
            let mut cy = 0;
            for j in 0..n {
                if j == i {
                    continue;
                }
                kj += usize::from(dj[j] <= eps);
                cx += usize::from(dx[j] <= eps);
                cy += usize::from(dy[j] <= eps);
            }
            (kj, cx, cy)
        } else {
            let mut cx = 0;
            let mut cy = 0;
            for j in 0..n {
                if j == i {
                    continue;
                }
                cx += usize::from(dx[j] < rho);
                cy += usize::from(dy[j] < rho);
            }
            (cfg.k, cx, cy)
        };
        terms.push(sample_term(k_i, n_x, n_y));
    }
    terms
}

fn tree_terms(x: &SampleBlock<'_>, y: &SampleBlock<'_>, cfg: &KnnConfig) -> Vec<f64> {
    let n = x.n;
    let eps = cfg.tie_epsilon;
    let joint_dim = x.dim + y.dim;
    let mut joint = Vec::with_capacity(n * joint_dim);
    for i in 0..n {
        joint.extend_from_slice(x.row(i));
        joint.extend_from_slice(y.row(i));
    }
    let jt = KdTree::build(&joint, n, joint_dim);
    let xt = KdTree::build(x.data, n, x.dim);
    let yt = KdTree::build(y.data, n, y.dim);

    let mut terms = Vec::with_capacity(n);
    for i in 0..n {
        let q = &joint[i * joint_dim..(i + 1) * joint_dim];
        let qx = x.row(i);
        let qy = y.row(i);
        // self sits in the tree at distance zero, hence k + 1
        let rho = jt.kth_distance(q, cfg.k + 1);
        let (k_i, n_x, n_y) = if rho <= eps {
            (
                jt.count_within(q, eps, false) - 1,
                xt.count_within(qx, eps, false) - 1,
                yt.count_within(qy, eps, false) - 1,
            )
        } else {
            (
                cfg.k,
                xt.count_within(qx, rho, true) - 1,
                yt.count_within(qy, rho, true) - 1,
            )
        };
        terms.push(sample_term(k_i, n_x, n_y));
    }
    terms
}

/// Estimates the conditional mutual information `I(Y; X_a | X_c)` as
/// `I(Y; [X_a, X_c]) - I(Y; X_c)` with one shared `k`, clamped at zero.
/// An empty conditioning block reduces to `knn_mi(x_a, y, cfg)` bit-exactly.
pub fn knn_cmi(
    y: &SampleBlock<'_>,
    x_a: &SampleBlock<'_>,
    x_c: &SampleBlock<'_>,
    cfg: &KnnConfig,
) -> Result<MiEstimate, EstimatorError> {
    if y.n != x_a.n {
        return Err(EstimatorError::SampleCountMismatch {
            left: y.n,
            right: x_a.n,
        });
    }
    if y.n != x_c.n {
        return Err(EstimatorError::SampleCountMismatch {
            left: y.n,
            right: x_c.n,
        });
    }
    if x_c.dim == 0 {
        return knn_mi(x_a, y, cfg);
    }
    let n = y.n;
    let dim = x_a.dim + x_c.dim;
    let mut joint = Vec::with_capacity(n * dim);
    for i in 0..n {
        joint.extend_from_slice(x_a.row(i));
        joint.extend_from_slice(x_c.row(i));
    }
    let joint_block = SampleBlock::new(&joint, n, dim)?;
    let with_candidate = knn_mi(&joint_block, y, cfg)?;
    let conditioning_only = knn_mi(x_c, y, cfg)?;
    let raw = with_candidate.value - conditioning_only.value;
    Ok(MiEstimate {
        value: raw.max(0.0),
        n_samples: n,
        k_used: cfg.k,
        clamped: raw < 0.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SeededRng;
    use alloc::vec::Vec;

    const LN2: f64 = core::f64::consts::LN_2;

    fn block(data: &[f64], n: usize, dim: usize) -> SampleBlock<'_> {
        SampleBlock::new(data, n, dim).unwrap()
    }

    /// Straight-line KSG (continuous-only), written independently: full sort
    /// for the k-th distance, naive counting, plain left-to-right mean.
    fn ksg_reference(xs: &[f64], ys: &[f64], n: usize, k: usize) -> f64 {
        let mut total = 0.0;
        for i in 0..n {
            let mut dists: Vec<f64> = (0..n)
                .map(|j| (xs[i] - xs[j]).abs().max((ys[i] - ys[j]).abs()))
                .collect();
            dists[i] = f64::INFINITY;
            let mut sorted = dists.clone();
            sorted.sort_by(f64::total_cmp);
            let rho = sorted[k - 1];
            let nx = (0..n)
                .filter(|&j| j != i && (xs[i] - xs[j]).abs() < rho)
                .count();
            let ny = (0..n)
                .filter(|&j| j != i && (ys[i] - ys[j]).abs() < rho)
                .count();
            total += digamma(k as f64).unwrap()
                - digamma((nx + 1) as f64).unwrap()
                - digamma((ny + 1) as f64).unwrap();
        }
        digamma(n as f64).unwrap() + total / n as f64
    }

    #[test]
    fn reduces_to_ksg_on_continuous_data() {
        let mut rng = SeededRng::new(2);
        let n = 150;
        let xs: Vec<f64> = (0..n).map(|_| rng.normal()).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 0.8 * x + 0.6 * rng.normal()).collect();
        let cfg = KnnConfig::with_k(4);
        let got = knn_mi(&block(&xs, n, 1), &block(&ys, n, 1), &cfg).unwrap();
        let reference = ksg_reference(&xs, &ys, n, 4).max(0.0);
        assert!(
            (got.value - reference).abs() < 1e-12,
            "mixed {} vs ksg {}",
            got.value,
            reference
        );
    }

    #[test]
    fn identical_discrete_labels_estimate_ln2() {
        // x = y, balanced binary labels; closed-form per-sample counts
        let n = 1000;
        let labels: Vec<f64> = (0..n).map(|i| (i % 2) as f64).collect();
        let cfg = KnnConfig::with_k(5);
        let got = knn_mi(&block(&labels, n, 1), &block(&labels, n, 1), &cfg).unwrap();
        let expected = digamma(n as f64).unwrap() + digamma((n / 2 - 1) as f64).unwrap()
            - 2.0 * digamma((n / 2) as f64).unwrap();
        assert!((got.value - expected).abs() < 1e-12);
        assert!((got.value - LN2).abs() < 0.02, "got {}", got.value);
    }

    #[test]
    fn independent_samples_estimate_near_zero() {
        let mut sum = 0.0;
        let seeds = 3;
        for seed in 0..seeds {
            let mut rng = SeededRng::new(seed);
            let n = 800;
            let xs: Vec<f64> = (0..n).map(|_| rng.normal()).collect();
            let ys: Vec<f64> = (0..n).map(|_| rng.normal()).collect();
            let cfg = KnnConfig::with_k(5);
            sum += knn_mi(&block(&xs, n, 1), &block(&ys, n, 1), &cfg)
                .unwrap()
                .value;
        }
        let mean = sum / seeds as f64;
        assert!(mean <= 0.03, "mean over seeds {mean}");
    }

    #[test]
    fn correlated_gaussian_close_to_closed_form() {
        let mut rng = SeededRng::new(9);
        let n = 1500;
        let rho = 0.9;
        let scale = (1.0f64 - rho * rho).sqrt();
        let mut xs = Vec::with_capacity(n);
        let mut ys = Vec::with_capacity(n);
        for _ in 0..n {
            let a = rng.normal();
            xs.push(a);
            ys.push(rho * a + scale * rng.normal());
        }
        let truth = -0.5 * (1.0 - rho * rho).ln();
        let cfg = KnnConfig::with_k(5);
        let got = knn_mi(&block(&xs, n, 1), &block(&ys, n, 1), &cfg).unwrap();
        assert!((got.value - truth).abs() < 0.08, "got {}", got.value);
    }

    #[test]
    fn xor_cmi_detected_only_with_conditioning() {
        let mut rng = SeededRng::new(4);
        let n = 2000;
        let mut x1 = Vec::with_capacity(n);
        let mut x2 = Vec::with_capacity(n);
        let mut y = Vec::with_capacity(n);
        for _ in 0..n {
            let a = rng.bernoulli(0.5) as u8;
            let b = rng.bernoulli(0.5) as u8;
            x1.push(a as f64);
            x2.push(b as f64);
            y.push((a ^ b) as f64);
        }
        let cfg = KnnConfig::with_k(5);
        let conditional = knn_cmi(
            &block(&y, n, 1),
            &block(&x1, n, 1),
            &block(&x2, n, 1),
            &cfg,
        )
        .unwrap();
        assert!(
            (conditional.value - LN2).abs() < 0.06,
            "cmi {}",
            conditional.value
        );
        let marginal = knn_mi(&block(&x1, n, 1), &block(&y, n, 1), &cfg).unwrap();
        assert!(marginal.value < 0.03, "marginal {}", marginal.value);
    }

    #[test]
    fn duplicated_candidate_in_conditioning_is_exactly_zero() {
        let mut rng = SeededRng::new(12);
        let n = 400;
        let a: Vec<f64> = (0..n).map(|_| rng.normal()).collect();
        let c: Vec<f64> = a.clone(); // conditioning block duplicates the candidate
        let y: Vec<f64> = a.iter().map(|v| v + 0.3 * rng.normal()).collect();
        let cfg = KnnConfig::with_k(4);
        let got = knn_cmi(&block(&y, n, 1), &block(&a, n, 1), &block(&c, n, 1), &cfg).unwrap();
        assert_eq!(got.value, 0.0);
    }

    #[test]
    fn empty_conditioning_reduces_bit_exactly() {
        let mut rng = SeededRng::new(8);
        let n = 300;
        let a: Vec<f64> = (0..n).map(|_| rng.normal()).collect();
        let y: Vec<f64> = a.iter().map(|v| 0.5 * v + rng.normal()).collect();
        let cfg = KnnConfig::with_k(3);
        let empty = SampleBlock::new(&[], n, 0).unwrap();
        let via_cmi = knn_cmi(&block(&y, n, 1), &block(&a, n, 1), &empty, &cfg).unwrap();
        let direct = knn_mi(&block(&a, n, 1), &block(&y, n, 1), &cfg).unwrap();
        assert_eq!(via_cmi.value.to_bits(), direct.value.to_bits());
    }

    #[test]
    fn permutation_invariant_bit_exactly() {
        let mut rng = SeededRng::new(21);
        let n = 250;
        let xs: Vec<f64> = (0..n).map(|_| rng.normal()).collect();
        let ys: Vec<f64> = xs.iter().map(|v| v * v + 0.2 * rng.normal()).collect();
        let cfg = KnnConfig::with_k(4);
        let base = knn_mi(&block(&xs, n, 1), &block(&ys, n, 1), &cfg).unwrap();

        let mut order: Vec<usize> = (0..n).collect();
        rng.shuffle(&mut order);
        let xs2: Vec<f64> = order.iter().map(|&i| xs[i]).collect();
        let ys2: Vec<f64> = order.iter().map(|&i| ys[i]).collect();
        let shuffled = knn_mi(&block(&xs2, n, 1), &block(&ys2, n, 1), &cfg).unwrap();
        assert_eq!(base.value.to_bits(), shuffled.value.to_bits());
    }

    #[test]
    fn backends_agree_bit_exactly() {
        let mut rng = SeededRng::new(33);
        let n = 500;
        // two continuous columns plus a discrete one: mass points included
        let mut xs = Vec::with_capacity(n * 2);
        let mut ys = Vec::with_capacity(n);
        for _ in 0..n {
            xs.push(rng.normal());
            xs.push((rng.normal() * 2.0).round() / 2.0);
            ys.push((rng.bernoulli(0.5)) as u8 as f64);
        }
        for k in [3usize, 8] {
            let brute = KnnConfig {
                k,
                backend: Backend::BruteForce,
                ..KnnConfig::default()
            };
            let tree = KnnConfig {
                k,
                backend: Backend::KdTree,
                ..KnnConfig::default()
            };
            let a = knn_mi(&block(&xs, n, 2), &block(&ys, n, 1), &brute).unwrap();
            let b = knn_mi(&block(&xs, n, 2), &block(&ys, n, 1), &tree).unwrap();
            assert_eq!(a.value.to_bits(), b.value.to_bits(), "k = {k}");
        }
    }

    #[test]
    fn nested_information_is_monotone_on_average() {
        // I(Y; X1, X2) >= I(Y; X1) - small estimator slack, seed-averaged
        let seeds = 4;
        let mut joint_sum = 0.0;
        let mut single_sum = 0.0;
        for seed in 0..seeds {
            let mut rng = SeededRng::new(100 + seed);
            let n = 600;
            let mut x = Vec::with_capacity(n * 2);
            let mut y = Vec::with_capacity(n);
            for _ in 0..n {
                let a = rng.normal();
                let b = rng.normal();
                x.push(a);
                x.push(b);
                y.push(a + 0.7 * b + 0.5 * rng.normal());
            }
            let cfg = KnnConfig::with_k(5);
            let x1: Vec<f64> = (0..n).map(|i| x[2 * i]).collect();
            joint_sum += knn_mi(&block(&x, n, 2), &block(&y, n, 1), &cfg)
                .unwrap()
                .value;
            single_sum += knn_mi(&block(&x1, n, 1), &block(&y, n, 1), &cfg)
                .unwrap()
                .value;
        }
        assert!(joint_sum / seeds as f64 >= single_sum / seeds as f64 - 0.03);
    }

    #[test]
    fn errors_and_degenerate_blocks() {
        let xs = [1.0, 2.0, 3.0];
        let cfg = KnnConfig::with_k(5);
        let err = knn_mi(&block(&xs, 3, 1), &block(&xs, 3, 1), &cfg);
        assert!(matches!(
            err,
            Err(EstimatorError::TooFewSamples { n: 3, k: 5 })
        ));

        let empty = SampleBlock::new(&[], 3, 0).unwrap();
        let zero = knn_mi(&empty, &block(&xs, 3, 1), &KnnConfig::with_k(1)).unwrap();
        assert_eq!(zero.value, 0.0);
        assert!(!zero.clamped);

        assert!(SampleBlock::new(&xs, 2, 2).is_err());
        let short = [1.0, 2.0];
        assert!(matches!(
            knn_mi(&block(&xs, 3, 1), &block(&short, 2, 1), &KnnConfig::with_k(1)),
            Err(EstimatorError::SampleCountMismatch { .. })
        ));
    }
}
