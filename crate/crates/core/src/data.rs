//! Sample matrices with a typed target.
//!
//! A [`Dataset`] is an immutable `N x d` matrix of finite reals plus either a
//! bounded real target (regression) or dense class labels (classification).
//! Construction validates every invariant once; afterwards the dataset is
//! safe to share across threads read-only.

use num_traits::Float;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;


use crate::rng::SeededRng;

/// Feature-index subset: sorted, duplicate-free indices in `[0, d)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct IndexSet {
    indices: Vec<usize>,
}

impl IndexSet {
    /// Builds a set from arbitrary indices (sorted and deduplicated).
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        Self { indices }
    }

    /// Like [`IndexSet::new`] but rejects indices outside `[0, dim)`.
    pub fn checked(indices: Vec<usize>, dim: usize) -> Result<Self, DataError> {
        if let Some(&bad) = indices.iter().find(|&&i| i >= dim) {
            return Err(DataError::IndexOutOfRange { index: bad, dim });
        }
        Ok(Self::new(indices))
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn full(dim: usize) -> Self {
        Self {
            indices: (0..dim).collect(),
        }
    }

    pub fn complement(&self, dim: usize) -> Self {
        Self {
            indices: (0..dim).filter(|i| !self.contains(*i)).collect(),
        }
    }

    pub fn contains(&self, index: usize) -> bool {
        self.indices.binary_search(&index).is_ok()
    }

    pub fn with(&self, index: usize) -> Self {
        let mut v = self.indices.clone();
        if let Err(pos) = v.binary_search(&index) {
            v.insert(pos, index);
        }
        Self { indices: v }
    }

    pub fn without(&self, index: usize) -> Self {
        let mut v = self.indices.clone();
        if let Ok(pos) = v.binary_search(&index) {
            v.remove(pos);
        }
        Self { indices: v }
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut v = self.indices.clone();
        v.extend_from_slice(&other.indices);
        Self::new(v)
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.indices
    }
}

impl From<&[usize]> for IndexSet {
    fn from(s: &[usize]) -> Self {
        Self::new(s.to_vec())
    }
}

/// Target column of a [`Dataset`].
#[derive(Debug, Clone, PartialEq)]
pub enum Target {
    /// Real-valued target with `|y| <= bound` for every sample.
    Real { values: Vec<f64>, bound: f64 },
    /// Dense class labels; `classes[label]` is the display name.
    Class {
        labels: Vec<usize>,
        classes: Vec<String>,
    },
}

impl Target {
    /// Real target with the bound set to the empirical `max |y|`
    /// (1.0 for an all-zero column, where any bound is vacuous).
    pub fn real_auto_bound(values: Vec<f64>) -> Self {
        let max_abs = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        Target::Real {
            values,
            bound: if max_abs > 0.0 { max_abs } else { 1.0 },
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Target::Real { values, .. } => values.len(),
            Target::Class { labels, .. } => labels.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Task descriptor derived from the target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TaskKind {
    Regression { target_bound: f64 },
    Classification { n_classes: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub enum DataError {
    EmptyData,
    ShapeMismatch {
        rows: usize,
        cols: usize,
        values: usize,
    },
    NonFinite {
        row: usize,
        col: usize,
    },
    NonFiniteTarget {
        row: usize,
    },
    TargetBoundViolated {
        row: usize,
        value: f64,
        bound: f64,
    },
    LabelOutOfRange {
        row: usize,
        label: usize,
        n_classes: usize,
    },
    TooFewClasses {
        n_classes: usize,
    },
    IndexOutOfRange {
        index: usize,
        dim: usize,
    },
    DegenerateSplit,
    WrongTaskKind,
}

impl fmt::Display for DataError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DataError::EmptyData => write!(f, "dataset must contain at least one row"),
            DataError::ShapeMismatch { rows, cols, values } => write!(
                f,
                "feature buffer holds {values} values, expected {rows} x {cols}"
            ),
            DataError::NonFinite { row, col } => {
                write!(f, "non-finite feature value at row {row}, column {col}")
            }
            DataError::NonFiniteTarget { row } => {
                write!(f, "non-finite target value at row {row}")
            }
            DataError::TargetBoundViolated { row, value, bound } => write!(
                f,
                "target {value} at row {row} exceeds declared bound {bound}"
            ),
            DataError::LabelOutOfRange {
                row,
                label,
                n_classes,
            } => write!(
                f,
                "label {label} at row {row} out of range for {n_classes} classes"
            ),
            DataError::TooFewClasses { n_classes } => {
                write!(f, "classification needs at least 2 classes, got {n_classes}")
            }
            DataError::IndexOutOfRange { index, dim } => {
                write!(f, "feature index {index} out of range for dimension {dim}")
            }
            DataError::DegenerateSplit => {
                write!(f, "split would leave an empty train or test part")
            }
            DataError::WrongTaskKind => write!(f, "operation not defined for this task kind"),
        }
    }
}

impl core::error::Error for DataError {}

/// Immutable `N x d` sample matrix with a typed target.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    features: Vec<f64>, // row-major
    n_rows: usize,
    n_cols: usize,
    feature_names: Vec<String>,
    target: Target,
    standardized: bool,
    degenerate_columns: Vec<usize>,
}

impl Dataset {
    /// Validates and assembles a dataset. `features` is row-major with
    /// `target.len()` rows and `feature_names.len()` columns.
    pub fn new(
        features: Vec<f64>,
        feature_names: Vec<String>,
        target: Target,
    ) -> Result<Self, DataError> {
        let n_rows = target.len();
        let n_cols = feature_names.len();
        if n_rows == 0 {
            return Err(DataError::EmptyData);
        }
        if features.len() != n_rows * n_cols {
            return Err(DataError::ShapeMismatch {
                rows: n_rows,
                cols: n_cols,
                values: features.len(),
            });
        }
        for (i, v) in features.iter().enumerate() {
            if !v.is_finite() {
                return Err(DataError::NonFinite {
                    row: i / n_cols.max(1),
                    col: i % n_cols.max(1),
                });
            }
        }
        match &target {
            Target::Real { values, bound } => {
                if !bound.is_finite() || *bound <= 0.0 {
                    return Err(DataError::TargetBoundViolated {
                        row: 0,
                        value: *bound,
                        bound: *bound,
                    });
                }
                for (row, y) in values.iter().enumerate() {
                    if !y.is_finite() {
                        return Err(DataError::NonFiniteTarget { row });
                    }
                    if y.abs() > *bound {
                        return Err(DataError::TargetBoundViolated {
                            row,
                            value: *y,
                            bound: *bound,
                        });
                    }
                }
            }
            Target::Class { labels, classes } => {
                if classes.len() < 2 {
                    return Err(DataError::TooFewClasses {
                        n_classes: classes.len(),
                    });
                }
                for (row, &label) in labels.iter().enumerate() {
                    if label >= classes.len() {
                        return Err(DataError::LabelOutOfRange {
                            row,
                            label,
                            n_classes: classes.len(),
                        });
                    }
                }
            }
        }
        Ok(Self {
            features,
            n_rows,
            n_cols,
            feature_names,
            target,
            standardized: false,
            degenerate_columns: Vec::new(),
        })
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_features(&self) -> usize {
        self.n_cols
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn target(&self) -> &Target {
        &self.target
    }

    pub fn task(&self) -> TaskKind {
        match &self.target {
            Target::Real { bound, .. } => TaskKind::Regression {
                target_bound: *bound,
            },
            Target::Class { classes, .. } => TaskKind::Classification {
                n_classes: classes.len(),
            },
        }
    }

    /// Row slice (length `d`).
    pub fn row(&self, r: usize) -> &[f64] {
        &self.features[r * self.n_cols..(r + 1) * self.n_cols]
    }

    pub fn value(&self, r: usize, c: usize) -> f64 {
        self.features[r * self.n_cols + c]
    }

    pub fn features_raw(&self) -> &[f64] {
        &self.features
    }

    pub fn column(&self, c: usize) -> Vec<f64> {
        (0..self.n_rows).map(|r| self.value(r, c)).collect()
    }

    /// Target as a real vector; class labels are cast to their index value.
    pub fn target_values(&self) -> Vec<f64> {
        match &self.target {
            Target::Real { values, .. } => values.clone(),
            Target::Class { labels, .. } => labels.iter().map(|&l| l as f64).collect(),
        }
    }

    /// True once [`Dataset::standardize`] produced this dataset.
    pub fn is_standardized(&self) -> bool {
        self.standardized
    }

    /// Columns left untouched by standardization for lack of variance.
    pub fn degenerate_columns(&self) -> &[usize] {
        &self.degenerate_columns
    }

    /// Restriction to the feature columns in `keep` (in sorted order); the
    /// target is carried over unchanged.
    pub fn subset(&self, keep: &IndexSet) -> Result<Dataset, DataError> {
        if let Some(bad) = keep.iter().find(|&i| i >= self.n_cols) {
            return Err(DataError::IndexOutOfRange {
                index: bad,
                dim: self.n_cols,
            });
        }
        let cols: Vec<usize> = keep.iter().collect();
        let mut features = Vec::with_capacity(self.n_rows * cols.len());
        for r in 0..self.n_rows {
            let row = self.row(r);
            features.extend(cols.iter().map(|&c| row[c]));
        }
        Ok(Dataset {
            features,
            n_rows: self.n_rows,
            n_cols: cols.len(),
            feature_names: cols.iter().map(|&c| self.feature_names[c].clone()).collect(),
            target: self.target.clone(),
            standardized: self.standardized,
            degenerate_columns: Vec::new(),
        })
    }

    /// Per-column z-scoring; see [`Standardizer`]. Zero-variance columns pass
    /// through unchanged and are flagged via [`Dataset::degenerate_columns`].
    pub fn standardize(&self) -> Dataset {
        Standardizer::fit(self).transform(self)
    }

    /// Deterministic row partition; stratified per class for classification.
    /// Returns `(train, test)` with `test` holding `round(test_fraction * n)`
    /// rows of each stratum, clamped so both parts stay populated wherever
    /// the stratum has at least two rows.
    pub fn train_test_split(
        &self,
        test_fraction: f64,
        seed: u64,
    ) -> Result<(Dataset, Dataset), DataError> {
        if !(test_fraction > 0.0 && test_fraction < 1.0) || self.n_rows < 2 {
            return Err(DataError::DegenerateSplit);
        }
        let strata: Vec<Vec<usize>> = match &self.target {
            Target::Real { .. } => vec![(0..self.n_rows).collect()],
            Target::Class { labels, classes } => {
                let mut groups = vec![Vec::new(); classes.len()];
                for (row, &label) in labels.iter().enumerate() {
                    groups[label].push(row);
                }
                groups.into_iter().filter(|g| !g.is_empty()).collect()
            }
        };
        let mut rng = SeededRng::new(seed);
        let mut test_rows: Vec<usize> = Vec::new();
        for mut group in strata {
            rng.shuffle(&mut group);
            let n = group.len();
            let want = (test_fraction * n as f64).round() as usize;
            let take = if n >= 2 {
                want.clamp(1, n - 1)
            } else {
                0 // lone row: keep it in train
            };
            test_rows.extend_from_slice(&group[..take]);
        }
        if test_rows.is_empty() || test_rows.len() == self.n_rows {
            return Err(DataError::DegenerateSplit);
        }
        test_rows.sort_unstable();
        let mut in_test = vec![false; self.n_rows];
        for &r in &test_rows {
            in_test[r] = true;
        }
        let train_rows: Vec<usize> = (0..self.n_rows).filter(|&r| !in_test[r]).collect();
        Ok((self.take_rows(&train_rows), self.take_rows(&test_rows)))
    }

    fn take_rows(&self, rows: &[usize]) -> Dataset {
        let mut features = Vec::with_capacity(rows.len() * self.n_cols);
        for &r in rows {
            features.extend_from_slice(self.row(r));
        }
        let target = match &self.target {
            Target::Real { values, bound } => Target::Real {
                values: rows.iter().map(|&r| values[r]).collect(),
                bound: *bound,
            },
            Target::Class { labels, classes } => Target::Class {
                labels: rows.iter().map(|&r| labels[r]).collect(),
                classes: classes.clone(),
            },
        };
        Dataset {
            features,
            n_rows: rows.len(),
            n_cols: self.n_cols,
            feature_names: self.feature_names.clone(),
            target,
            standardized: self.standardized,
            degenerate_columns: self.degenerate_columns.clone(),
        }
    }
}

/// Column-wise z-scoring parameters, fit on one dataset and applicable to
/// another (train statistics applied to a test part).
#[derive(Debug, Clone)]
pub struct Standardizer {
    means: Vec<f64>,
    stds: Vec<f64>, // 1.0 for degenerate columns
    degenerate: Vec<usize>,
}

impl Standardizer {
    pub fn fit(ds: &Dataset) -> Self {
        let n = ds.n_rows();
        let d = ds.n_features();
        let mut means = vec![0.0; d];
        for r in 0..n {
            for (m, v) in means.iter_mut().zip(ds.row(r)) {
                *m += v;
            }
        }
        for m in &mut means {
            *m /= n as f64;
        }
        let mut vars = vec![0.0; d];
        for r in 0..n {
            for ((s, m), v) in vars.iter_mut().zip(&means).zip(ds.row(r)) {
                let c = v - m;
                *s += c * c;
            }
        }
        let mut degenerate = Vec::new();
        let mut stds = vec![1.0; d];
        for c in 0..d {
            let var = if n > 1 { vars[c] / (n - 1) as f64 } else { 0.0 };
            if var > 0.0 {
                stds[c] = var.sqrt();
            } else {
                degenerate.push(c);
                means[c] = 0.0; // pass the column through untouched
            }
        }
        Self {
            means,
            stds,
            degenerate,
        }
    }

    pub fn degenerate_columns(&self) -> &[usize] {
        &self.degenerate
    }

    pub fn transform(&self, ds: &Dataset) -> Dataset {
        assert_eq!(ds.n_features(), self.means.len());
        let mut out = ds.clone();
        for r in 0..out.n_rows {
            for c in 0..out.n_cols {
                let idx = r * out.n_cols + c;
                out.features[idx] = (out.features[idx] - self.means[c]) / self.stds[c];
            }
        }
        out.standardized = true;
        out.degenerate_columns = self.degenerate.clone();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("x{}", i + 1)).collect()
    }

    fn toy_regression() -> Dataset {
        // 4 rows, 3 cols
        let features = vec![
            1.0, 10.0, 5.0, //
            2.0, 20.0, 5.0, //
            3.0, 30.0, 5.0, //
            4.0, 40.0, 5.0,
        ];
        Dataset::new(
            features,
            names(3),
            Target::real_auto_bound(vec![1.0, -2.0, 3.0, -4.0]),
        )
        .unwrap()
    }

    #[test]
    fn construction_validates() {
        assert!(matches!(
            Dataset::new(vec![], names(0), Target::real_auto_bound(vec![])),
            Err(DataError::EmptyData)
        ));
        assert!(matches!(
            Dataset::new(vec![1.0], names(2), Target::real_auto_bound(vec![0.5])),
            Err(DataError::ShapeMismatch { .. })
        ));
        assert!(matches!(
            Dataset::new(
                vec![f64::NAN],
                names(1),
                Target::real_auto_bound(vec![0.5])
            ),
            Err(DataError::NonFinite { row: 0, col: 0 })
        ));
        assert!(matches!(
            Dataset::new(
                vec![1.0],
                names(1),
                Target::Real {
                    values: vec![2.0],
                    bound: 1.0
                }
            ),
            Err(DataError::TargetBoundViolated { .. })
        ));
        assert!(matches!(
            Dataset::new(
                vec![1.0],
                names(1),
                Target::Class {
                    labels: vec![0],
                    classes: vec!["a".to_string()]
                }
            ),
            Err(DataError::TooFewClasses { .. })
        ));
    }

    #[test]
    fn auto_bound_is_max_abs() {
        let ds = toy_regression();
        assert_eq!(
            ds.task(),
            TaskKind::Regression { target_bound: 4.0 }
        );
    }

    #[test]
    fn subset_identity_empty_and_order() {
        let ds = toy_regression();
        let full = ds.subset(&IndexSet::full(3)).unwrap();
        assert_eq!(full.features_raw(), ds.features_raw());
        assert_eq!(full.feature_names(), ds.feature_names());

        let empty = ds.subset(&IndexSet::empty()).unwrap();
        assert_eq!(empty.n_features(), 0);
        assert_eq!(empty.n_rows(), 4);
        assert_eq!(empty.target(), ds.target());

        let pick = ds.subset(&IndexSet::new(vec![2, 0])).unwrap();
        assert_eq!(pick.feature_names(), &["x1".to_string(), "x3".to_string()]);
        assert_eq!(pick.row(1), &[2.0, 5.0]);

        assert!(ds.subset(&IndexSet::new(vec![3])).is_err());
    }

    #[test]
    fn subset_composes() {
        let ds = toy_regression();
        // keep {0, 2}, then keep relative {1} -> absolute {2}
        let ab = ds
            .subset(&IndexSet::new(vec![0, 2]))
            .unwrap()
            .subset(&IndexSet::new(vec![1]))
            .unwrap();
        let direct = ds.subset(&IndexSet::new(vec![2])).unwrap();
        assert_eq!(ab.features_raw(), direct.features_raw());
        assert_eq!(ab.feature_names(), direct.feature_names());
    }

    #[test]
    fn standardize_basic_and_degenerate() {
        let ds = toy_regression();
        let z = ds.standardize();
        assert!(z.is_standardized());
        // column 2 is constant
        assert_eq!(z.degenerate_columns(), &[2]);
        for c in 0..2 {
            let col = z.column(c);
            let mean: f64 = col.iter().sum::<f64>() / col.len() as f64;
            let var: f64 =
                col.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (col.len() - 1) as f64;
            assert!(mean.abs() < 1e-9, "col {c} mean {mean}");
            assert!((var - 1.0).abs() < 1e-9, "col {c} var {var}");
        }
        assert_eq!(z.column(2), ds.column(2));
    }

    #[test]
    fn split_sizes_partition_and_determinism() {
        let features: Vec<f64> = (0..10).map(|i| i as f64).collect();
        let ds = Dataset::new(
            features,
            names(1),
            Target::real_auto_bound((0..10).map(|i| i as f64).collect()),
        )
        .unwrap();
        let (train, test) = ds.train_test_split(0.3, 7).unwrap();
        assert_eq!(train.n_rows(), 7);
        assert_eq!(test.n_rows(), 3);
        let mut seen: Vec<i64> = train
            .column(0)
            .into_iter()
            .chain(test.column(0))
            .map(|v| v as i64)
            .collect();
        seen.sort_unstable();
        assert_eq!(seen, (0..10).collect::<Vec<i64>>());

        let (train2, test2) = ds.train_test_split(0.3, 7).unwrap();
        assert_eq!(train.features_raw(), train2.features_raw());
        assert_eq!(test.features_raw(), test2.features_raw());
    }

    #[test]
    fn split_is_stratified() {
        // class counts {8, 2}: every part must keep at least one minority row
        let labels = vec![0, 0, 0, 0, 1, 0, 0, 1, 0, 0];
        let ds = Dataset::new(
            (0..10).map(|i| i as f64).collect(),
            names(1),
            Target::Class {
                labels,
                classes: vec!["a".to_string(), "b".to_string()],
            },
        )
        .unwrap();
        for seed in 0..20 {
            let (train, test) = ds.train_test_split(0.5, seed).unwrap();
            for part in [&train, &test] {
                let minority = match part.target() {
                    Target::Class { labels, .. } => {
                        labels.iter().filter(|&&l| l == 1).count()
                    }
                    _ => unreachable!(),
                };
                assert!(minority >= 1, "seed {seed} lost the minority class");
            }
        }
    }

    #[test]
    fn split_rejects_degenerate() {
        let ds = toy_regression();
        assert!(ds.train_test_split(0.0, 1).is_err());
        assert!(ds.train_test_split(1.0, 1).is_err());
        let one = Dataset::new(
            vec![1.0],
            names(1),
            Target::real_auto_bound(vec![1.0]),
        )
        .unwrap();
        assert!(one.train_test_split(0.5, 1).is_err());
    }
}
