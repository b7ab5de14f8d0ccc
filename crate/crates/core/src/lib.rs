//! Information-theoretic feature selection with error guarantees.
//!
//! Removing a feature set `A` from a prediction problem inflates the best
//! achievable error by an amount controlled by the conditional mutual
//! information `nu(A) = I(Y; X_A | X_rest)`: the minimum MSE grows by at most
//! `2 B^2 nu(A)` (targets bounded by `B`), and the Bayes misclassification
//! rate by at most `sqrt(2 nu(A))`. This crate provides everything needed to
//! act on, and to check, those bounds:
//!
//! * [`data`] — immutable sample matrices with a typed target, subsetting,
//!   standardization and deterministic splits;
//! * [`estimator`] — a mixed discrete/continuous k-nearest-neighbor mutual
//!   information estimator (max-norm, mass-point aware) and the CMI built
//!   from it;
//! * [`oracle`] — exact CMI / Bayes error / minimum-MSE computations on small
//!   tabulated joints, the brute-force referee for every bound;
//! * [`bounds`] — closed-form bound evaluation plus the linear-model analysis
//!   (normal equations, Pearson matrix, per-feature residuals);
//! * [`selection`] — greedy backward elimination and forward selection with
//!   pluggable stopping rules, including the error-budget rule that keeps the
//!   accumulated CMI under `delta/(2B^2)` (regression) or `delta^2/2`
//!   (classification);
//! * [`synth`] — seeded generators for the synthetic benchmark families;
//! * [`verify`] — the self-contained property suite exercising all of the
//!   above against the oracle.
//!
//! The crate is `no_std` (with `alloc`); all I/O, file formats and the CLI
//! live in the companion `infosel` crate.

#![no_std]

#[macro_use]
extern crate alloc;

#[cfg(test)]
#[macro_use]
extern crate std;

pub mod bounds;
pub mod classify;
pub mod data;
pub mod estimator;
pub mod math;
pub mod oracle;
pub mod rng;
pub mod selection;
pub mod synth;
pub mod verify;

mod kdtree;

pub use data::{Dataset, IndexSet, Target, TaskKind};
pub use estimator::{KnnConfig, MiEstimate};
pub use oracle::TabularJoint;
pub use selection::{SelectionTrace, StoppingRule};
