//! Reference classifiers the boosted model is compared against: Gaussian
//! naive Bayes, a linear SVM trained with the Pegasos subgradient scheme,
//! and a one-hidden-layer sigmoid MLP trained by full-batch gradient
//! descent.
//!
//! All three expose the same contract as the boosted model: a real-valued
//! `margin` whose sign is the decision, with `predict(x) == 1` exactly when
//! `margin(x) > 0`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::MarginClassifier;

/// Which baseline to train, with its hyperparameters.
#[derive(Debug, Clone, PartialEq)]
pub enum BaselineKind {
    GaussianNb,
    LinearSvm { lambda: f64, epochs: usize, seed: u64 },
    Mlp { hidden_units: usize, learning_rate: f64, epochs: usize, seed: u64 },
}

impl BaselineKind {
    /// Conventional defaults; the SVM and MLP schedules were sized so the
    /// reference tasks in the test suite (separable blobs, 4-point XOR)
    /// train to zero error with margin to spare.
    pub fn default_linear_svm(seed: u64) -> Self {
        BaselineKind::LinearSvm { lambda: 3e-2, epochs: 300, seed }
    }

    pub fn default_mlp(seed: u64) -> Self {
        BaselineKind::Mlp { hidden_units: 16, learning_rate: 1.5, epochs: 400, seed }
    }
}

/// A trained baseline.
#[derive(Debug, Clone, PartialEq)]
pub enum BaselineModel {
    GaussianNb(GaussianNbModel),
    LinearSvm(LinearSvmModel),
    Mlp(MlpModel),
}

impl BaselineModel {
    pub fn margin(&self, row: &[f64]) -> Result<f64> {
        match self {
            BaselineModel::GaussianNb(m) => m.margin(row),
            BaselineModel::LinearSvm(m) => m.margin(row),
            BaselineModel::Mlp(m) => m.margin(row),
        }
    }

    pub fn predict(&self, row: &[f64]) -> Result<u8> {
        Ok((self.margin(row)? > 0.0) as u8)
    }

    pub fn input_dim(&self) -> usize {
        match self {
            BaselineModel::GaussianNb(m) => m.means_pos.len(),
            BaselineModel::LinearSvm(m) => m.weights.len(),
            BaselineModel::Mlp(m) => m.hidden_weights.first().map(|r| r.len()).unwrap_or(0),
        }
    }
}

impl MarginClassifier for BaselineModel {
    fn margin(&self, row: &[f64]) -> Result<f64> {
        BaselineModel::margin(self, row)
    }
}

fn check_training_set(rows: &[Vec<f64>], labels: &[u8]) -> Result<usize> {
    if rows.len() != labels.len() {
        return Err(Error::Shape(format!(
            "{} rows against {} labels",
            rows.len(),
            labels.len()
        )));
    }
    let d = rows.first().map(|r| r.len()).unwrap_or(0);
    if rows.is_empty() || d == 0 {
        return Err(Error::Parameter("training data must have rows and columns".into()));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != d {
            return Err(Error::Shape(format!("row {i} has {} values, expected {d}", row.len())));
        }
        if row.iter().any(|v| !v.is_finite()) {
            return Err(Error::Parameter(format!("row {i} contains a non-finite value")));
        }
    }
    if labels.iter().any(|l| *l > 1) {
        return Err(Error::Parameter("labels must be 0/1".into()));
    }
    let pos = labels.iter().filter(|l| **l == 1).count();
    if pos == 0 || pos == labels.len() {
        return Err(Error::Class(format!(
            "training needs both classes; got {pos} of {} rows positive",
            labels.len()
        )));
    }
    Ok(d)
}

/// Trains the requested baseline.
pub fn train_baseline(
    kind: &BaselineKind,
    rows: &[Vec<f64>],
    labels: &[u8],
) -> Result<BaselineModel> {
    let d = check_training_set(rows, labels)?;
    match kind {
        BaselineKind::GaussianNb => Ok(BaselineModel::GaussianNb(train_gaussian_nb(rows, labels, d))),
        BaselineKind::LinearSvm { lambda, epochs, seed } => {
            if !(lambda.is_finite() && *lambda > 0.0) {
                return Err(Error::Parameter(format!("SVM lambda must be positive, got {lambda}")));
            }
            if *epochs == 0 {
                return Err(Error::Parameter("SVM epoch count must be at least 1".into()));
            }
            train_linear_svm(rows, labels, d, *lambda, *epochs, *seed).map(BaselineModel::LinearSvm)
        }
        BaselineKind::Mlp { hidden_units, learning_rate, epochs, seed } => {
            if *hidden_units == 0 {
                return Err(Error::Parameter("MLP needs at least one hidden unit".into()));
            }
            if !(learning_rate.is_finite() && *learning_rate > 0.0) {
                return Err(Error::Parameter(format!(
                    "MLP learning rate must be positive, got {learning_rate}"
                )));
            }
            if *epochs == 0 {
                return Err(Error::Parameter("MLP epoch count must be at least 1".into()));
            }
            train_mlp(rows, labels, d, *hidden_units, *learning_rate, *epochs, *seed)
                .map(BaselineModel::Mlp)
        }
    }
}

// ---------------------------------------------------------------------------
// Gaussian naive Bayes
// ---------------------------------------------------------------------------

/// Per-class Gaussian feature model with log priors.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianNbModel {
    pub log_prior_neg: f64,
    pub log_prior_pos: f64,
    pub means_neg: Vec<f64>,
    pub vars_neg: Vec<f64>,
    pub means_pos: Vec<f64>,
    pub vars_pos: Vec<f64>,
}

fn mean_and_population_variance(values: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = values.clone().count() as f64;
    let mean = values.clone().sum::<f64>() / n;
    let var = values.map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    (mean, var)
}

fn train_gaussian_nb(rows: &[Vec<f64>], labels: &[u8], d: usize) -> GaussianNbModel {
    let n = rows.len() as f64;
    let pos_count = labels.iter().filter(|l| **l == 1).count() as f64;
    let neg_count = n - pos_count;

    let mut means_neg = vec![0.0; d];
    let mut vars_neg = vec![0.0; d];
    let mut means_pos = vec![0.0; d];
    let mut vars_pos = vec![0.0; d];
    for j in 0..d {
        let all = rows.iter().map(move |r| r[j]);
        let (_, global_var) = mean_and_population_variance(all);
        // Relative floor: keeps the model scale-consistent and the densities
        // finite when a class is constant along a feature.
        let floor = 1e-9 * (global_var + 1e-12);

        let neg = rows.iter().zip(labels).filter(|(_, l)| **l == 0).map(move |(r, _)| r[j]);
        let (m, v) = mean_and_population_variance(neg);
        means_neg[j] = m;
        vars_neg[j] = v.max(floor);

        let pos = rows.iter().zip(labels).filter(|(_, l)| **l == 1).map(move |(r, _)| r[j]);
        let (m, v) = mean_and_population_variance(pos);
        means_pos[j] = m;
        vars_pos[j] = v.max(floor);
    }

    GaussianNbModel {
        log_prior_neg: (neg_count / n).ln(),
        log_prior_pos: (pos_count / n).ln(),
        means_neg,
        vars_neg,
        means_pos,
        vars_pos,
    }
}

fn log_gaussian(x: f64, mean: f64, var: f64) -> f64 {
    -0.5 * (std::f64::consts::TAU * var).ln() - (x - mean) * (x - mean) / (2.0 * var)
}

impl GaussianNbModel {
    /// Log-posterior odds of the insider class:
    /// `log p(1|x) - log p(0|x)` up to the shared evidence term.
    pub fn margin(&self, row: &[f64]) -> Result<f64> {
        if row.len() != self.means_pos.len() {
            return Err(Error::Shape(format!(
                "row has {} values but the model expects {}",
                row.len(),
                self.means_pos.len()
            )));
        }
        let mut odds = self.log_prior_pos - self.log_prior_neg;
        for (j, x) in row.iter().enumerate() {
            odds += log_gaussian(*x, self.means_pos[j], self.vars_pos[j]);
            odds -= log_gaussian(*x, self.means_neg[j], self.vars_neg[j]);
        }
        Ok(odds)
    }
}

// ---------------------------------------------------------------------------
// Linear SVM (Pegasos)
// ---------------------------------------------------------------------------

/// Linear decision function `w . x + b`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSvmModel {
    pub weights: Vec<f64>,
    pub bias: f64,
}

impl LinearSvmModel {
    pub fn margin(&self, row: &[f64]) -> Result<f64> {
        if row.len() != self.weights.len() {
            return Err(Error::Shape(format!(
                "row has {} values but the model expects {}",
                row.len(),
                self.weights.len()
            )));
        }
        Ok(self.weights.iter().zip(row).map(|(w, x)| w * x).sum::<f64>() + self.bias)
    }

    /// Primal objective `lambda/2 * ||w||^2 + mean hinge loss` on a dataset.
    pub fn objective(&self, rows: &[Vec<f64>], labels: &[u8], lambda: f64) -> Result<f64> {
        let mut hinge = 0.0;
        for (row, label) in rows.iter().zip(labels) {
            let y = if *label == 1 { 1.0 } else { -1.0 };
            hinge += (1.0 - y * self.margin(row)?).max(0.0);
        }
        let norm2: f64 = self.weights.iter().map(|w| w * w).sum();
        Ok(lambda / 2.0 * norm2 + hinge / rows.len() as f64)
    }
}

fn train_linear_svm(
    rows: &[Vec<f64>],
    labels: &[u8],
    d: usize,
    lambda: f64,
    epochs: usize,
    seed: u64,
) -> Result<LinearSvmModel> {
    let y: Vec<f64> = labels.iter().map(|l| if *l == 1 { 1.0 } else { -1.0 }).collect();
    let mut w = vec![0.0; d];
    let mut b = 0.0;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..rows.len()).collect();
    let mut t = 0u64;
    for epoch in 1..=epochs {
        order.shuffle(&mut rng);
        for &i in &order {
            t += 1;
            let eta = 1.0 / (lambda * t as f64);
            let margin: f64 = w.iter().zip(&rows[i]).map(|(w, x)| w * x).sum::<f64>() + b;
            let violates = y[i] * margin < 1.0;
            // Regularisation shrink applies every step; the bias term is
            // unregularised and only moves on margin violations.
            let shrink = 1.0 - eta * lambda;
            for wj in w.iter_mut() {
                *wj *= shrink;
            }
            if violates {
                for (wj, xj) in w.iter_mut().zip(&rows[i]) {
                    *wj += eta * y[i] * xj;
                }
                b += eta * y[i];
            }
        }
        if w.iter().any(|v| !v.is_finite()) || !b.is_finite() {
            return Err(Error::Numerical(format!(
                "linear SVM diverged at epoch {epoch}: non-finite weights"
            )));
        }
    }
    Ok(LinearSvmModel { weights: w, bias: b })
}

// ---------------------------------------------------------------------------
// One-hidden-layer MLP
// ---------------------------------------------------------------------------

/// Sigmoid network `x -> sigma(w2 . sigma(W1 x + b1) + b2)`; the margin is
/// the output activation minus 1/2.
#[derive(Debug, Clone, PartialEq)]
pub struct MlpModel {
    /// `hidden_units x input_dim`.
    pub hidden_weights: Vec<Vec<f64>>,
    pub hidden_bias: Vec<f64>,
    pub output_weights: Vec<f64>,
    pub output_bias: f64,
}

fn sigmoid(z: f64) -> f64 {
    1.0 / (1.0 + (-z).exp())
}

impl MlpModel {
    fn forward(&self, row: &[f64]) -> (Vec<f64>, f64) {
        let hidden: Vec<f64> = self
            .hidden_weights
            .iter()
            .zip(&self.hidden_bias)
            .map(|(wr, b)| sigmoid(wr.iter().zip(row).map(|(w, x)| w * x).sum::<f64>() + b))
            .collect();
        let out = sigmoid(
            self.output_weights.iter().zip(&hidden).map(|(w, h)| w * h).sum::<f64>()
                + self.output_bias,
        );
        (hidden, out)
    }

    pub fn margin(&self, row: &[f64]) -> Result<f64> {
        let d = self.hidden_weights.first().map(|r| r.len()).unwrap_or(0);
        if row.len() != d {
            return Err(Error::Shape(format!(
                "row has {} values but the model expects {d}",
                row.len()
            )));
        }
        Ok(self.forward(row).1 - 0.5)
    }

    /// Mean squared error of the output activation against 0/1 targets.
    pub fn squared_error_loss(&self, rows: &[Vec<f64>], labels: &[u8]) -> Result<f64> {
        if rows.is_empty() || rows.len() != labels.len() {
            return Err(Error::Shape(format!(
                "{} rows against {} labels",
                rows.len(),
                labels.len()
            )));
        }
        let mut loss = 0.0;
        for (row, label) in rows.iter().zip(labels) {
            let err = self.margin(row)? + 0.5 - f64::from(*label);
            loss += err * err;
        }
        Ok(loss / rows.len() as f64)
    }

    /// Analytic gradient of [`Self::squared_error_loss`] with respect to the
    /// flat parameter vector (same layout as [`Self::flat_params`]).
    pub fn loss_gradient(&self, rows: &[Vec<f64>], labels: &[u8]) -> Result<Vec<f64>> {
        if rows.is_empty() || rows.len() != labels.len() {
            return Err(Error::Shape(format!(
                "{} rows against {} labels",
                rows.len(),
                labels.len()
            )));
        }
        let h = self.hidden_weights.len();
        let d = self.hidden_weights[0].len();
        let n = rows.len() as f64;
        let mut g_w1 = vec![vec![0.0; d]; h];
        let mut g_b1 = vec![0.0; h];
        let mut g_w2 = vec![0.0; h];
        let mut g_b2 = 0.0;
        for (row, label) in rows.iter().zip(labels) {
            if row.len() != d {
                return Err(Error::Shape(format!(
                    "row has {} values but the model expects {d}",
                    row.len()
                )));
            }
            let (hidden, out) = self.forward(row);
            // d(mean (out - y)^2)/d z2 for this sample.
            let delta_out = 2.0 * (out - f64::from(*label)) / n * out * (1.0 - out);
            g_b2 += delta_out;
            for k in 0..h {
                g_w2[k] += delta_out * hidden[k];
                let delta_hidden = delta_out * self.output_weights[k] * hidden[k] * (1.0 - hidden[k]);
                g_b1[k] += delta_hidden;
                for (gj, xj) in g_w1[k].iter_mut().zip(row) {
                    *gj += delta_hidden * xj;
                }
            }
        }
        let mut flat = Vec::with_capacity(h * d + 2 * h + 1);
        for r in g_w1 {
            flat.extend(r);
        }
        flat.extend(g_b1);
        flat.extend(g_w2);
        flat.push(g_b2);
        Ok(flat)
    }

    /// All parameters as one vector: hidden weights row-major, hidden
    /// biases, output weights, output bias.
    pub fn flat_params(&self) -> Vec<f64> {
        let mut flat = Vec::new();
        for r in &self.hidden_weights {
            flat.extend(r.iter().copied());
        }
        flat.extend(self.hidden_bias.iter().copied());
        flat.extend(self.output_weights.iter().copied());
        flat.push(self.output_bias);
        flat
    }

    /// Inverse of [`Self::flat_params`].
    pub fn set_flat_params(&mut self, flat: &[f64]) -> Result<()> {
        let h = self.hidden_weights.len();
        let d = self.hidden_weights.first().map(|r| r.len()).unwrap_or(0);
        let expected = h * d + 2 * h + 1;
        if flat.len() != expected {
            return Err(Error::Shape(format!(
                "{} flat parameters for a model needing {expected}",
                flat.len()
            )));
        }
        let mut it = flat.iter().copied();
        for r in &mut self.hidden_weights {
            for w in r.iter_mut() {
                *w = it.next().unwrap();
            }
        }
        for b in &mut self.hidden_bias {
            *b = it.next().unwrap();
        }
        for w in &mut self.output_weights {
            *w = it.next().unwrap();
        }
        self.output_bias = it.next().unwrap();
        Ok(())
    }
}

fn train_mlp(
    rows: &[Vec<f64>],
    labels: &[u8],
    d: usize,
    hidden_units: usize,
    learning_rate: f64,
    epochs: usize,
    seed: u64,
) -> Result<MlpModel> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut init = || rng.gen_range(-0.5..0.5);
    let mut model = MlpModel {
        hidden_weights: (0..hidden_units).map(|_| (0..d).map(|_| init()).collect()).collect(),
        hidden_bias: (0..hidden_units).map(|_| init()).collect(),
        output_weights: (0..hidden_units).map(|_| init()).collect(),
        output_bias: init(),
    };
    for epoch in 1..=epochs {
        let grad = model.loss_gradient(rows, labels)?;
        let mut params = model.flat_params();
        for (p, g) in params.iter_mut().zip(&grad) {
            *p -= learning_rate * g;
        }
        model.set_flat_params(&params)?;
        let loss = model.squared_error_loss(rows, labels)?;
        if !loss.is_finite() {
            return Err(Error::Numerical(format!(
                "MLP training diverged at epoch {epoch}: loss is {loss}"
            )));
        }
    }
    Ok(model)
}
