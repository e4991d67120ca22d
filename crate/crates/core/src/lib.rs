//! Behavioural-analytics toolkit for insider-threat detection on activity
//! logs.
//!
//! The library turns per-user, per-day activity counts (logons, emails,
//! file accesses, web visits) into binary benign/insider decisions through
//! a deterministic pipeline:
//!
//! 1. [`ingest`] — parse raw activity logs, aggregate daily counts, join
//!    ground-truth labels, or generate a synthetic benchmark table;
//! 2. [`preprocess`] — cleaning audit, min-max normalisation, SMOTE
//!    oversampling of the minority class, PCA projection, and a stratified
//!    train/test split, in either of two stage orders;
//! 3. [`boosting`] — the primary detector: discrete AdaBoost over decision
//!    stumps;
//! 4. [`baselines`] — Gaussian naive Bayes, a Pegasos-trained linear SVM,
//!    and a one-hidden-layer MLP for comparison;
//! 5. [`metrics`] — confusion-matrix scores, ROC curves and AUC.
//!
//! Every random choice flows from explicit `u64` seeds through a ChaCha
//! generator, so all results are bit-reproducible across runs and
//! platforms.

pub mod baselines;
pub mod boosting;
pub mod error;
pub mod ingest;
pub mod metrics;
pub mod numerics;
pub mod preprocess;
pub mod table;

pub use error::{Error, Result};
pub use table::{FeatureTable, RowKey};

/// A binary classifier that exposes a signed decision value.
///
/// Positive margins vote insider (label 1), non-positive margins vote
/// benign (label 0); the magnitude orders rows for ROC analysis. Ties at
/// exactly zero fall to the benign side so that an uninformative model
/// never raises alerts.
pub trait MarginClassifier {
    /// Signed decision value for one row.
    fn margin(&self, row: &[f64]) -> Result<f64>;

    /// Hard 0/1 decision derived from the margin.
    fn predict(&self, row: &[f64]) -> Result<u8> {
        Ok(if self.margin(row)? > 0.0 { 1 } else { 0 })
    }

    /// Margins for a batch of rows.
    fn margins(&self, rows: &[Vec<f64>]) -> Result<Vec<f64>> {
        rows.iter().map(|r| self.margin(r)).collect()
    }

    /// Hard decisions for a batch of rows.
    fn predictions(&self, rows: &[Vec<f64>]) -> Result<Vec<u8>> {
        rows.iter().map(|r| self.predict(r)).collect()
    }
}
