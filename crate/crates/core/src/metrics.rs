//! Binary-classification evaluation: confusion counts, accuracy /
//! precision / recall / F1 with explicit degenerate-ratio handling, and ROC
//! curves with trapezoidal AUC.
//!
//! Class 1 (insider) is always the positive class.

use std::io;

use crate::error::{Error, Result};

/// Raw outcome counts with class 1 as positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConfusionMatrix {
    pub true_pos: usize,
    pub false_pos: usize,
    pub false_neg: usize,
    pub true_neg: usize,
}

impl ConfusionMatrix {
    pub fn total(&self) -> usize {
        self.true_pos + self.false_pos + self.false_neg + self.true_neg
    }
}

/// Tallies predictions against ground truth.
pub fn confusion(predictions: &[u8], labels: &[u8]) -> Result<ConfusionMatrix> {
    if predictions.len() != labels.len() {
        return Err(Error::Shape(format!(
            "{} predictions against {} labels",
            predictions.len(),
            labels.len()
        )));
    }
    for (i, v) in predictions.iter().chain(labels.iter()).enumerate() {
        if *v > 1 {
            return Err(Error::Parameter(format!(
                "labels and predictions must be 0/1; found {v} (flat position {i})"
            )));
        }
    }
    let mut cm = ConfusionMatrix { true_pos: 0, false_pos: 0, false_neg: 0, true_neg: 0 };
    for (&p, &y) in predictions.iter().zip(labels) {
        match (p, y) {
            (1, 1) => cm.true_pos += 1,
            (1, 0) => cm.false_pos += 1,
            (0, 1) => cm.false_neg += 1,
            (0, 0) => cm.true_neg += 1,
            _ => unreachable!("values validated above"),
        }
    }
    Ok(cm)
}

/// Which ratio fell back to 0.0 because its denominator was zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DegenerateFlags {
    pub precision: bool,
    pub recall: bool,
    pub f1: bool,
}

impl DegenerateFlags {
    pub fn any(&self) -> bool {
        self.precision || self.recall || self.f1
    }
}

/// The four headline metrics, as fractions in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricSet {
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    /// Which ratios were 0/0 and were defined as 0.0.
    pub degenerate: DegenerateFlags,
}

/// Computes accuracy `(TP+TN)/total`, precision `TP/(TP+FP)`, recall
/// `TP/(TP+FN)` and F1 `2PR/(P+R)`. A zero denominator makes the metric 0.0
/// and sets the matching degenerate flag.
pub fn compute_metrics(cm: &ConfusionMatrix) -> Result<MetricSet> {
    let total = cm.total();
    if total == 0 {
        return Err(Error::Parameter("empty confusion matrix".into()));
    }
    let mut degenerate = DegenerateFlags::default();
    let accuracy = (cm.true_pos + cm.true_neg) as f64 / total as f64;
    let precision = if cm.true_pos + cm.false_pos == 0 {
        degenerate.precision = true;
        0.0
    } else {
        cm.true_pos as f64 / (cm.true_pos + cm.false_pos) as f64
    };
    let recall = if cm.true_pos + cm.false_neg == 0 {
        degenerate.recall = true;
        0.0
    } else {
        cm.true_pos as f64 / (cm.true_pos + cm.false_neg) as f64
    };
    let f1 = if precision + recall == 0.0 {
        degenerate.f1 = true;
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    };
    Ok(MetricSet { accuracy, precision, recall, f1, degenerate })
}

/// ROC curve over descending score thresholds, plus its trapezoidal AUC.
#[derive(Debug, Clone, PartialEq)]
pub struct RocCurve {
    /// `(false_positive_rate, true_positive_rate)` pairs from (0, 0) to
    /// (1, 1).
    pub points: Vec<(f64, f64)>,
    /// The score cut that produces each point; `points[i]` classifies
    /// `score >= thresholds[i]` as positive. The first entry is +inf.
    pub thresholds: Vec<f64>,
    /// Area under the curve by the trapezoid rule.
    pub auc: f64,
}

/// Builds the ROC curve for real-valued scores where higher means "more
/// positive". Thresholds are the distinct score values in descending order;
/// tied scores collapse into one point. Requires both classes present and
/// finite scores.
pub fn roc_curve(scores: &[f64], labels: &[u8]) -> Result<RocCurve> {
    if scores.len() != labels.len() {
        return Err(Error::Shape(format!(
            "{} scores against {} labels",
            scores.len(),
            labels.len()
        )));
    }
    if let Some(bad) = scores.iter().position(|s| !s.is_finite()) {
        return Err(Error::Parameter(format!(
            "score at row {bad} is {}, scores must be finite",
            scores[bad]
        )));
    }
    if labels.iter().any(|l| *l > 1) {
        return Err(Error::Parameter("labels must be 0/1".into()));
    }
    let pos = labels.iter().filter(|l| **l == 1).count();
    let neg = labels.len() - pos;
    if pos == 0 || neg == 0 {
        return Err(Error::Class(format!(
            "ROC needs both classes; got {pos} positives and {neg} negatives"
        )));
    }

    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&i, &j| scores[j].total_cmp(&scores[i]));

    let mut points = vec![(0.0, 0.0)];
    let mut thresholds = vec![f64::INFINITY];
    let mut tp = 0usize;
    let mut fp = 0usize;
    let mut i = 0;
    while i < order.len() {
        let cut = scores[order[i]];
        // Absorb the whole tie group before emitting a point.
        while i < order.len() && scores[order[i]] == cut {
            if labels[order[i]] == 1 {
                tp += 1;
            } else {
                fp += 1;
            }
            i += 1;
        }
        points.push((fp as f64 / neg as f64, tp as f64 / pos as f64));
        thresholds.push(cut);
    }
    debug_assert_eq!(*points.last().unwrap(), (1.0, 1.0));

    let mut auc = 0.0;
    for pair in points.windows(2) {
        let (x0, y0) = pair[0];
        let (x1, y1) = pair[1];
        auc += (x1 - x0) * (y0 + y1) / 2.0;
    }
    Ok(RocCurve { points, thresholds, auc })
}

impl RocCurve {
    /// Writes the curve as a two-column CSV (`fpr,tpr`).
    pub fn write_csv<W: io::Write>(&self, mut writer: W) -> Result<()> {
        writeln!(writer, "fpr,tpr")?;
        for (fpr, tpr) in &self.points {
            writeln!(writer, "{fpr},{tpr}")?;
        }
        Ok(())
    }
}
