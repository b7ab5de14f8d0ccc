//! Built-in downstream evaluator: a plain k-nearest-neighbor majority-vote
//! classifier. It exists so benchmark runs can attach a test accuracy to a
//! selected feature subset without any external learner; it is deliberately
//! unremarkable (Euclidean metric, deterministic tie-breaks on sample index
//! and then on the lower label).

use alloc::vec::Vec;
use core::fmt;


use crate::data::{Dataset, Target};

#[derive(Debug, Clone, PartialEq)]
pub enum ClassifyError {
    WrongTaskKind,
    EmptyTrain,
    FeatureMismatch { train: usize, test: usize },
}

impl fmt::Display for ClassifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassifyError::WrongTaskKind => write!(f, "classifier needs class targets"),
            ClassifyError::EmptyTrain => write!(f, "training set is empty"),
            ClassifyError::FeatureMismatch { train, test } => {
                write!(f, "train has {train} features, test has {test}")
            }
        }
    }
}

impl core::error::Error for ClassifyError {}

fn euclidean2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Majority vote among the `k` nearest training rows.
pub fn knn_predict(train: &Dataset, query: &[f64], k: usize) -> Result<usize, ClassifyError> {
    let labels = match train.target() {
        Target::Class { labels, .. } => labels,
        Target::Real { .. } => return Err(ClassifyError::WrongTaskKind),
    };
    let n = train.n_rows();
    if n == 0 {
        return Err(ClassifyError::EmptyTrain);
    }
    if query.len() != train.n_features() {
        return Err(ClassifyError::FeatureMismatch {
            train: train.n_features(),
            test: query.len(),
        });
    }
    let k = k.min(n).max(1);
    let mut scored: Vec<(f64, usize)> = (0..n)
        .map(|r| (euclidean2(train.row(r), query), r))
        .collect();
    scored.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let n_classes = match train.target() {
        Target::Class { classes, .. } => classes.len(),
        _ => unreachable!(),
    };
    let mut votes = vec![0usize; n_classes];
    for &(_, row) in &scored[..k] {
        votes[labels[row]] += 1;
    }
    let best = votes.iter().max().copied().unwrap_or(0);
    Ok(votes.iter().position(|&v| v == best).unwrap_or(0))
}

/// Fraction of test rows classified correctly by `k`-NN majority vote.
pub fn knn_accuracy(train: &Dataset, test: &Dataset, k: usize) -> Result<f64, ClassifyError> {
    let test_labels = match test.target() {
        Target::Class { labels, .. } => labels,
        Target::Real { .. } => return Err(ClassifyError::WrongTaskKind),
    };
    if train.n_features() != test.n_features() {
        return Err(ClassifyError::FeatureMismatch {
            train: train.n_features(),
            test: test.n_features(),
        });
    }
    let mut correct = 0usize;
    for r in 0..test.n_rows() {
        if knn_predict(train, test.row(r), k)? == test_labels[r] {
            correct += 1;
        }
    }
    Ok(correct as f64 / test.n_rows() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::String;

    fn two_cluster(n_per: usize, gap: f64) -> Dataset {
        let mut features = Vec::new();
        let mut labels = Vec::new();
        for i in 0..n_per {
            let wobble = (i as f64) * 0.01;
            features.extend_from_slice(&[-gap + wobble, 0.0]);
            labels.push(0);
            features.extend_from_slice(&[gap - wobble, 0.1]);
            labels.push(1);
        }
        Dataset::new(
            features,
            vec![String::from("x1"), String::from("x2")],
            Target::Class {
                labels,
                classes: vec![String::from("a"), String::from("b")],
            },
        )
        .unwrap()
    }

    #[test]
    fn separable_clusters_classify_perfectly() {
        let train = two_cluster(20, 3.0);
        let test = two_cluster(7, 2.5);
        assert_eq!(knn_accuracy(&train, &test, 5).unwrap(), 1.0);
    }

    #[test]
    fn prediction_is_deterministic() {
        let train = two_cluster(10, 1.0);
        let q = [0.0, 0.05];
        let a = knn_predict(&train, &q, 5).unwrap();
        let b = knn_predict(&train, &q, 5).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_regression_targets() {
        let ds = Dataset::new(
            vec![1.0, 2.0],
            vec![String::from("x")],
            Target::real_auto_bound(vec![0.1, 0.2]),
        )
        .unwrap();
        assert!(matches!(
            knn_predict(&ds, &[1.0], 1),
            Err(ClassifyError::WrongTaskKind)
        ));
    }
}
