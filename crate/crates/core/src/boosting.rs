//! Discrete AdaBoost over axis-aligned decision stumps.
//!
//! Labels are handled as 0/1 at the API boundary and mapped to -1/+1
//! internally. Each round fits the stump minimising weighted error over all
//! features, all midpoint thresholds and both polarities, then re-weights
//! rows multiplicatively so the stump just fitted becomes a coin flip under
//! the new weights.

use crate::error::{Error, Result};
use crate::MarginClassifier;

/// One-feature threshold classifier: predicts +1 when
/// `polarity * (x[feature] - threshold) > 0`, else -1.
#[derive(Debug, Clone, PartialEq)]
pub struct Stump {
    pub feature_index: usize,
    pub threshold: f64,
    /// +1 or -1.
    pub polarity: i8,
}

impl Stump {
    /// The stump's vote on one row, in the -1/+1 convention.
    pub fn evaluate(&self, row: &[f64]) -> i8 {
        if (self.polarity as f64) * (row[self.feature_index] - self.threshold) > 0.0 {
            1
        } else {
            -1
        }
    }
}

/// Nonnegative per-row weights summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    /// Validates nonnegativity and unit sum (within 1e-12).
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Parameter("weight vector must be non-empty".into()));
        }
        for (i, w) in weights.iter().enumerate() {
            if !w.is_finite() || *w < 0.0 {
                return Err(Error::Parameter(format!("weight {w} at row {i} is not in [0, 1]")));
            }
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::Parameter(format!("weights sum to {sum}, expected 1")));
        }
        Ok(WeightVector(weights))
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter("weight vector must be non-empty".into()));
        }
        Ok(WeightVector(vec![1.0 / n as f64; n]))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn scale_and_renormalise(&mut self, factors: impl Iterator<Item = f64>) {
        for (w, f) in self.0.iter_mut().zip(factors) {
            *w *= f;
        }
        let sum: f64 = self.0.iter().sum();
        for w in &mut self.0 {
            *w /= sum;
        }
    }
}

/// Finds the weighted-error-minimising stump by sweeping, per feature, the
/// midpoints between consecutive distinct sorted values plus one below-range
/// sentinel, trying both polarities at each cut.
///
/// Ties are broken toward the lowest feature index, then the lowest
/// threshold, then polarity +1. The returned error is always in [0, 0.5]
/// because the two polarities of any cut have complementary errors.
pub fn fit_stump(
    rows: &[Vec<f64>],
    labels: &[i8],
    weights: &WeightVector,
) -> Result<(Stump, f64)> {
    if rows.is_empty() {
        return Err(Error::Parameter("cannot fit a stump on zero rows".into()));
    }
    let d = rows[0].len();
    if d == 0 {
        return Err(Error::Parameter("cannot fit a stump on zero features".into()));
    }
    if labels.len() != rows.len() || weights.len() != rows.len() {
        return Err(Error::Shape(format!(
            "{} rows, {} labels, {} weights",
            rows.len(),
            labels.len(),
            weights.len()
        )));
    }
    if labels.iter().any(|l| *l != 1 && *l != -1) {
        return Err(Error::Parameter("stump labels must be -1 or +1".into()));
    }

    let w = weights.as_slice();
    let total_pos: f64 = w.iter().zip(labels).filter(|(_, l)| **l == 1).map(|(w, _)| w).sum();
    let total_neg: f64 = w.iter().zip(labels).filter(|(_, l)| **l == -1).map(|(w, _)| w).sum();

    let mut best: Option<(Stump, f64)> = None;
    // Strictly-better replacement preserves the documented tie-break order
    // because candidates are enumerated feature-ascending, threshold-
    // ascending, polarity +1 first.
    let mut consider = |stump: Stump, error: f64| match &best {
        Some((_, e)) if error >= *e => {}
        _ => best = Some((stump, error)),
    };

    for feature in 0..d {
        let mut order: Vec<usize> = (0..rows.len()).collect();
        order.sort_by(|&i, &j| rows[i][feature].total_cmp(&rows[j][feature]));

        // Sentinel below the smallest value: polarity +1 votes +1 on every
        // row, polarity -1 votes -1 on every row.
        let sentinel = rows[order[0]][feature] - 1.0;
        consider(Stump { feature_index: feature, threshold: sentinel, polarity: 1 }, total_neg);
        consider(Stump { feature_index: feature, threshold: sentinel, polarity: -1 }, total_pos);

        // Sweep: cum_* covers rows with value <= current cut (predicted -1
        // by polarity +1).
        let mut cum_pos = 0.0;
        let mut cum_neg = 0.0;
        for (k, &i) in order.iter().enumerate() {
            if labels[i] == 1 {
                cum_pos += w[i];
            } else {
                cum_neg += w[i];
            }
            if k + 1 == order.len() {
                break;
            }
            let here = rows[i][feature];
            let next = rows[order[k + 1]][feature];
            if next <= here {
                continue; // tie group: no cut between equal values
            }
            let threshold = (here + next) / 2.0;
            let err_plus = cum_pos + (total_neg - cum_neg);
            consider(Stump { feature_index: feature, threshold, polarity: 1 }, err_plus);
            let err_minus = cum_neg + (total_pos - cum_pos);
            consider(Stump { feature_index: feature, threshold, polarity: -1 }, err_minus);
        }
    }
    let (stump, error) = best.expect("at least one candidate per feature");
    Ok((stump, error.max(0.0)))
}

/// Weighted error of a stump under the given weights (test and diagnostic
/// helper; training uses the sweep above).
pub fn stump_weighted_error(
    stump: &Stump,
    rows: &[Vec<f64>],
    labels: &[i8],
    weights: &WeightVector,
) -> f64 {
    rows.iter()
        .zip(labels)
        .zip(weights.as_slice())
        .filter(|((row, label), _)| stump.evaluate(row) != **label)
        .map(|(_, w)| w)
        .sum()
}

/// The boosted ensemble: stumps with their votes.
#[derive(Debug, Clone, PartialEq)]
pub struct AdaBoostModel {
    /// `(stump, alpha)` pairs in training order; every alpha is positive.
    pub learners: Vec<(Stump, f64)>,
    /// Names of the columns the model was trained on, for portability
    /// checks.
    pub feature_names: Vec<String>,
}

impl AdaBoostModel {
    pub fn rounds(&self) -> usize {
        self.learners.len()
    }

    /// The additive score `sum_t alpha_t * h_t(x)`. Zero for an empty
    /// ensemble.
    pub fn margin(&self, row: &[f64]) -> Result<f64> {
        if row.len() != self.feature_names.len() {
            return Err(Error::Shape(format!(
                "row has {} values but the model was trained on {} features",
                row.len(),
                self.feature_names.len()
            )));
        }
        Ok(self
            .learners
            .iter()
            .map(|(stump, alpha)| alpha * stump.evaluate(row) as f64)
            .sum())
    }

    /// Hard 0/1 decision: positive margin means insider; a zero margin
    /// (including the empty ensemble) defaults to benign.
    pub fn predict(&self, row: &[f64]) -> Result<u8> {
        Ok((self.margin(row)? > 0.0) as u8)
    }
}

impl MarginClassifier for AdaBoostModel {
    fn margin(&self, row: &[f64]) -> Result<f64> {
        AdaBoostModel::margin(self, row)
    }
}

/// Why training stopped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StopReason {
    /// Reached the round budget.
    MaxRounds,
    /// A stump achieved raw error at or below the clamp floor; it was kept
    /// and training halted.
    PerfectFit { epsilon: f64 },
    /// The best stump was no better than chance; it was discarded and
    /// training halted.
    NoEdge { epsilon: f64 },
}

/// Per-round training record.
#[derive(Debug, Clone, PartialEq)]
pub struct BoostRound {
    /// Raw weighted error of the round's stump under the weights it was
    /// fitted with.
    pub epsilon: f64,
    /// Vote computed from the clamped error.
    pub alpha: f64,
    /// Weights after this round's multiplicative update and renormalisation.
    pub weights_after: Vec<f64>,
}

/// A trained ensemble together with its full training trace.
#[derive(Debug, Clone, PartialEq)]
pub struct AdaBoostFit {
    pub model: AdaBoostModel,
    pub rounds: Vec<BoostRound>,
    pub stop: StopReason,
}

/// Trains discrete AdaBoost for up to `t_max` rounds.
///
/// Per round: fit a stump, compute its raw weighted error `eps`; if
/// `eps >= 0.5` discard it and stop (no edge); otherwise clamp `eps` into
/// `[eps_floor, 0.5 - eps_floor]`, set `alpha = 0.5 * ln((1-eps)/eps)`,
/// keep the stump, update weights `w_i *= exp(-alpha * y_i * h(x_i))` and
/// renormalise. A raw error at or below the floor keeps the stump and stops
/// early.
pub fn train_adaboost(
    rows: &[Vec<f64>],
    labels01: &[u8],
    feature_names: &[String],
    t_max: usize,
    eps_floor: f64,
) -> Result<AdaBoostFit> {
    if t_max == 0 {
        return Err(Error::Parameter("round budget must be at least 1".into()));
    }
    if !(eps_floor > 0.0 && eps_floor < 0.25) {
        return Err(Error::Parameter(format!(
            "error clamp floor must lie in (0, 0.25), got {eps_floor}"
        )));
    }
    if rows.len() != labels01.len() {
        return Err(Error::Shape(format!(
            "{} rows against {} labels",
            rows.len(),
            labels01.len()
        )));
    }
    if rows.first().map(|r| r.len()) != Some(feature_names.len()) {
        return Err(Error::Shape(format!(
            "{} feature names for rows of width {}",
            feature_names.len(),
            rows.first().map(|r| r.len()).unwrap_or(0)
        )));
    }
    if labels01.iter().any(|l| *l > 1) {
        return Err(Error::Parameter("labels must be 0/1".into()));
    }
    let (neg, pos) = labels01.iter().fold((0, 0), |(n, p), l| match l {
        0 => (n + 1, p),
        _ => (n, p + 1),
    });
    if neg == 0 || pos == 0 {
        return Err(Error::Class(format!(
            "boosting needs both classes; got {neg} benign and {pos} insider rows"
        )));
    }

    let labels: Vec<i8> = labels01.iter().map(|l| if *l == 1 { 1 } else { -1 }).collect();
    let mut weights = WeightVector::uniform(rows.len())?;
    let mut learners = Vec::new();
    let mut trace = Vec::new();
    let mut stop = StopReason::MaxRounds;

    for _ in 0..t_max {
        let (stump, epsilon) = fit_stump(rows, &labels, &weights)?;
        if epsilon >= 0.5 {
            stop = StopReason::NoEdge { epsilon };
            break;
        }
        let clamped = epsilon.clamp(eps_floor, 0.5 - eps_floor);
        let alpha = 0.5 * ((1.0 - clamped) / clamped).ln();
        let votes: Vec<i8> = rows.iter().map(|r| stump.evaluate(r)).collect();
        learners.push((stump, alpha));
        weights.scale_and_renormalise(
            votes.iter().zip(&labels).map(|(h, y)| (-alpha * (*y as f64) * (*h as f64)).exp()),
        );
        trace.push(BoostRound { epsilon, alpha, weights_after: weights.as_slice().to_vec() });
        if epsilon <= eps_floor {
            stop = StopReason::PerfectFit { epsilon };
            break;
        }
    }

    Ok(AdaBoostFit {
        model: AdaBoostModel { learners, feature_names: feature_names.to_vec() },
        rounds: trace,
        stop,
    })
}

/// Upper bound on training error implied by the per-round errors:
/// `prod_t 2 * sqrt(eps_t * (1 - eps_t))`.
pub fn training_error_bound(epsilons: &[f64]) -> f64 {
    epsilons.iter().map(|e| 2.0 * (e * (1.0 - e)).sqrt()).product()
}
