//! Versioned text persistence for trained models.
//!
//! A model file bundles the fitted normaliser and PCA projection with the
//! classifier so that `evaluate` and `score` need no pipeline flags — the
//! scoring transform always matches the training transform. The format is
//! a single human-inspectable text document; floats carry 17 significant
//! digits, so save -> load -> save is byte-identical and loaded models
//! score identically to freshly trained ones.

use std::fmt::Write as _;
use std::path::Path;

use itd_core::baselines::{GaussianNbModel, LinearSvmModel, MlpModel};
use itd_core::boosting::{AdaBoostModel, Stump};
use itd_core::error::{Error, Result};
use itd_core::numerics::PcaModel;
use itd_core::preprocess::{NormParams, PipelineMode};

pub const FORMAT_HEADER: &str = "itd model file v1";
const LABEL_MAP: &str = "0->-1,1->+1";

/// The classifier payload of a model file.
#[derive(Debug, Clone, PartialEq)]
pub enum TrainedClassifier {
    AdaBoost(AdaBoostModel),
    GaussianNb(GaussianNbModel),
    LinearSvm(LinearSvmModel),
    Mlp(MlpModel),
}

impl TrainedClassifier {
    pub fn kind_tag(&self) -> &'static str {
        match self {
            TrainedClassifier::AdaBoost(_) => "adaboost",
            TrainedClassifier::GaussianNb(_) => "gaussian-nb",
            TrainedClassifier::LinearSvm(_) => "linear-svm",
            TrainedClassifier::Mlp(_) => "mlp",
        }
    }

    /// Signed decision value in the projected feature space.
    pub fn margin(&self, row: &[f64]) -> Result<f64> {
        match self {
            TrainedClassifier::AdaBoost(m) => m.margin(row),
            TrainedClassifier::GaussianNb(m) => m.margin(row),
            TrainedClassifier::LinearSvm(m) => m.margin(row),
            TrainedClassifier::Mlp(m) => m.margin(row),
        }
    }
}

/// A complete persisted model: metadata, preprocessing parameters, and the
/// classifier.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelFile {
    pub pipeline_mode: PipelineMode,
    /// Raw input columns the model scores (pre-normalisation).
    pub feature_names: Vec<String>,
    pub seed: u64,
    pub config_digest: String,
    pub created: String,
    pub norm: NormParams,
    pub pca: PcaModel,
    pub classifier: TrainedClassifier,
}

/// 17-significant-digit float rendering; round-trips every finite f64.
fn ff(v: f64) -> String {
    format!("{v:.16e}")
}

fn join_floats(values: &[f64]) -> String {
    values.iter().map(|v| ff(*v)).collect::<Vec<_>>().join(" ")
}

impl ModelFile {
    /// Margin for one row in the raw feature space: normalise, project,
    /// classify.
    pub fn margin_raw(&self, raw_row: &[f64]) -> Result<f64> {
        let normed = self.norm.apply_row(raw_row)?;
        let projected = self.pca.project(std::slice::from_ref(&normed))?;
        self.classifier.margin(&projected[0])
    }

    /// Rejects data whose columns differ from the training columns,
    /// naming what is missing or unexpected.
    pub fn check_compatible(&self, column_names: &[String]) -> Result<()> {
        if column_names == self.feature_names.as_slice() {
            return Ok(());
        }
        let missing: Vec<&str> = self
            .feature_names
            .iter()
            .filter(|n| !column_names.contains(n))
            .map(|n| n.as_str())
            .collect();
        let unexpected: Vec<&str> = column_names
            .iter()
            .filter(|n| !self.feature_names.contains(n))
            .map(|n| n.as_str())
            .collect();
        let mut parts = vec![format!(
            "data columns do not match the model's training columns [{}]",
            self.feature_names.join(", ")
        )];
        if !missing.is_empty() {
            parts.push(format!("missing: [{}]", missing.join(", ")));
        }
        if !unexpected.is_empty() {
            parts.push(format!("unexpected: [{}]", unexpected.join(", ")));
        }
        if missing.is_empty() && unexpected.is_empty() {
            parts.push("same names, different order".to_string());
        }
        Err(Error::Schema(parts.join("; ")))
    }

    /// Canonical text rendering.
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{FORMAT_HEADER}");
        let _ = writeln!(s, "kind: {}", self.classifier.kind_tag());
        let _ = writeln!(s, "pipeline_mode: {}", self.pipeline_mode.as_str());
        let _ = writeln!(s, "feature_names: {}", self.feature_names.join(","));
        let _ = writeln!(s, "label_map: {LABEL_MAP}");
        let _ = writeln!(s, "seed: {}", self.seed);
        let _ = writeln!(s, "config_digest: {}", self.config_digest);
        let _ = writeln!(s, "created: {}", self.created);

        let _ = writeln!(s, "[normalizer]");
        let _ = writeln!(s, "columns: {}", self.norm.n_cols());
        for (j, (min, max)) in self.norm.ranges.iter().enumerate() {
            let _ = writeln!(s, "range {j}: {} {}", ff(*min), ff(*max));
        }

        let _ = writeln!(s, "[pca]");
        let _ = writeln!(s, "input_dim: {}", self.pca.input_dim());
        let _ = writeln!(s, "output_dim: {}", self.pca.n_components());
        let _ = writeln!(s, "mean: {}", join_floats(&self.pca.mean));
        for (i, axis) in self.pca.components.iter().enumerate() {
            let _ = writeln!(
                s,
                "component {i}: eigenvalue={} explained={} axis={}",
                ff(self.pca.eigenvalues[i]),
                ff(self.pca.explained_variance_ratio[i]),
                join_floats(axis)
            );
        }

        let _ = writeln!(s, "[classifier]");
        let _ = writeln!(s, "type: {}", self.classifier.kind_tag());
        match &self.classifier {
            TrainedClassifier::AdaBoost(m) => {
                let _ = writeln!(s, "learners: {}", m.learners.len());
                for (i, (stump, alpha)) in m.learners.iter().enumerate() {
                    let _ = writeln!(
                        s,
                        "learner {i}: feature={} threshold={} polarity={} alpha={}",
                        stump.feature_index,
                        ff(stump.threshold),
                        stump.polarity,
                        ff(*alpha)
                    );
                }
            }
            TrainedClassifier::GaussianNb(m) => {
                let _ = writeln!(s, "log_prior_neg: {}", ff(m.log_prior_neg));
                let _ = writeln!(s, "log_prior_pos: {}", ff(m.log_prior_pos));
                let _ = writeln!(s, "means_neg: {}", join_floats(&m.means_neg));
                let _ = writeln!(s, "vars_neg: {}", join_floats(&m.vars_neg));
                let _ = writeln!(s, "means_pos: {}", join_floats(&m.means_pos));
                let _ = writeln!(s, "vars_pos: {}", join_floats(&m.vars_pos));
            }
            TrainedClassifier::LinearSvm(m) => {
                let _ = writeln!(s, "bias: {}", ff(m.bias));
                let _ = writeln!(s, "weights: {}", join_floats(&m.weights));
            }
            TrainedClassifier::Mlp(m) => {
                let _ = writeln!(s, "hidden_units: {}", m.hidden_weights.len());
                for (i, row) in m.hidden_weights.iter().enumerate() {
                    let _ = writeln!(s, "hidden {i}: {}", join_floats(row));
                }
                let _ = writeln!(s, "hidden_bias: {}", join_floats(&m.hidden_bias));
                let _ = writeln!(s, "output_weights: {}", join_floats(&m.output_weights));
                let _ = writeln!(s, "output_bias: {}", ff(m.output_bias));
            }
        }
        let _ = writeln!(s, "end");
        s
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.render())?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<ModelFile> {
        let text = std::fs::read_to_string(path)?;
        ModelFile::parse(&text)
    }

    /// Parses the canonical text rendering, validating structure and
    /// internal dimensions.
    pub fn parse(text: &str) -> Result<ModelFile> {
        let mut r = Reader::new(text);
        let header = r.next("format header")?;
        if header != FORMAT_HEADER {
            return Err(Error::Schema(format!(
                "unsupported model file: expected header {FORMAT_HEADER:?}, found {header:?}"
            )));
        }
        let kind = r.field("kind")?;
        let pipeline_mode = PipelineMode::parse(&r.field("pipeline_mode")?)
            .map_err(|e| Error::Schema(format!("line {}: {e}", r.line_no())))?;
        let names_line = r.field("feature_names")?;
        let feature_names: Vec<String> = if names_line.is_empty() {
            Vec::new()
        } else {
            names_line.split(',').map(str::to_string).collect()
        };
        let label_map = r.field("label_map")?;
        if label_map != LABEL_MAP {
            return Err(Error::Schema(format!(
                "line {}: unsupported label map {label_map:?}; expected {LABEL_MAP:?}",
                r.line_no()
            )));
        }
        let seed: u64 = r.parse_field("seed")?;
        let config_digest = r.field("config_digest")?;
        let created = r.field("created")?;

        r.expect("[normalizer]")?;
        let columns: usize = r.parse_field("columns")?;
        if columns != feature_names.len() {
            return Err(Error::Schema(format!(
                "normaliser has {columns} columns but {} feature names are listed",
                feature_names.len()
            )));
        }
        let mut ranges = Vec::with_capacity(columns);
        for j in 0..columns {
            let rest = r.field(&format!("range {j}"))?;
            let values = r.floats(&rest, 2)?;
            ranges.push((values[0], values[1]));
        }
        let norm = NormParams { ranges };

        r.expect("[pca]")?;
        let input_dim: usize = r.parse_field("input_dim")?;
        if input_dim != columns {
            return Err(Error::Schema(format!(
                "PCA input dimension {input_dim} does not match the {columns}-column normaliser"
            )));
        }
        let output_dim: usize = r.parse_field("output_dim")?;
        let mean_line = r.field("mean")?;
        let mean = r.floats(&mean_line, input_dim)?;
        let mut components = Vec::with_capacity(output_dim);
        let mut eigenvalues = Vec::with_capacity(output_dim);
        let mut explained = Vec::with_capacity(output_dim);
        for i in 0..output_dim {
            let rest = r.field(&format!("component {i}"))?;
            let mut tokens = rest.split_whitespace();
            let eig = tokens
                .next()
                .and_then(|t| t.strip_prefix("eigenvalue="))
                .ok_or_else(|| r.schema("component line must start with eigenvalue="))?;
            let expl = tokens
                .next()
                .and_then(|t| t.strip_prefix("explained="))
                .ok_or_else(|| r.schema("component line must carry explained="))?;
            let first_axis = tokens
                .next()
                .and_then(|t| t.strip_prefix("axis="))
                .ok_or_else(|| r.schema("component line must carry axis="))?;
            let mut axis = vec![r.float(first_axis)?];
            for t in tokens {
                axis.push(r.float(t)?);
            }
            if axis.len() != input_dim {
                return Err(r.schema(&format!(
                    "component axis has {} values, expected {input_dim}",
                    axis.len()
                )));
            }
            eigenvalues.push(r.float(eig)?);
            explained.push(r.float(expl)?);
            components.push(axis);
        }
        let pca = PcaModel { mean, components, eigenvalues, explained_variance_ratio: explained };

        r.expect("[classifier]")?;
        let type_tag = r.field("type")?;
        if type_tag != kind {
            return Err(Error::Schema(format!(
                "classifier type {type_tag:?} disagrees with header kind {kind:?}"
            )));
        }
        let classifier = match type_tag.as_str() {
            "adaboost" => {
                let count: usize = r.parse_field("learners")?;
                let mut learners = Vec::with_capacity(count);
                for i in 0..count {
                    let rest = r.field(&format!("learner {i}"))?;
                    let mut feature = None;
                    let mut threshold = None;
                    let mut polarity = None;
                    let mut alpha = None;
                    for token in rest.split_whitespace() {
                        let (key, value) = token
                            .split_once('=')
                            .ok_or_else(|| r.schema("learner fields must be key=value"))?;
                        match key {
                            "feature" => {
                                feature = Some(value.parse::<usize>().map_err(|_| {
                                    r.schema("learner feature index is not an integer")
                                })?)
                            }
                            "threshold" => threshold = Some(r.float(value)?),
                            "polarity" => {
                                polarity = Some(value.parse::<i8>().map_err(|_| {
                                    r.schema("learner polarity is not an integer")
                                })?)
                            }
                            "alpha" => alpha = Some(r.float(value)?),
                            other => {
                                return Err(r.schema(&format!("unknown learner field {other:?}")))
                            }
                        }
                    }
                    let (Some(feature_index), Some(threshold), Some(polarity), Some(alpha)) =
                        (feature, threshold, polarity, alpha)
                    else {
                        return Err(
                            r.schema("learner line must carry feature, threshold, polarity, alpha")
                        );
                    };
                    if feature_index >= output_dim {
                        return Err(r.schema(&format!(
                            "learner feature index {feature_index} out of range for \
                             {output_dim}-dimensional projected space"
                        )));
                    }
                    if polarity != 1 && polarity != -1 {
                        return Err(r.schema("learner polarity must be 1 or -1"));
                    }
                    learners.push((Stump { feature_index, threshold, polarity }, alpha));
                }
                let projected_names = (1..=output_dim).map(|i| format!("pc{i}")).collect();
                TrainedClassifier::AdaBoost(AdaBoostModel {
                    learners,
                    feature_names: projected_names,
                })
            }
            "gaussian-nb" => {
                let line = r.field("log_prior_neg")?;
                let log_prior_neg = r.float(&line)?;
                let line = r.field("log_prior_pos")?;
                let log_prior_pos = r.float(&line)?;
                let line = r.field("means_neg")?;
                let means_neg = r.floats(&line, output_dim)?;
                let line = r.field("vars_neg")?;
                let vars_neg = r.floats(&line, output_dim)?;
                let line = r.field("means_pos")?;
                let means_pos = r.floats(&line, output_dim)?;
                let line = r.field("vars_pos")?;
                let vars_pos = r.floats(&line, output_dim)?;
                TrainedClassifier::GaussianNb(GaussianNbModel {
                    log_prior_neg,
                    log_prior_pos,
                    means_neg,
                    vars_neg,
                    means_pos,
                    vars_pos,
                })
            }
            "linear-svm" => {
                let line = r.field("bias")?;
                let bias = r.float(&line)?;
                let line = r.field("weights")?;
                let weights = r.floats(&line, output_dim)?;
                TrainedClassifier::LinearSvm(LinearSvmModel { weights, bias })
            }
            "mlp" => {
                let hidden_units: usize = r.parse_field("hidden_units")?;
                let mut hidden_weights = Vec::with_capacity(hidden_units);
                for i in 0..hidden_units {
                    let line = r.field(&format!("hidden {i}"))?;
                    hidden_weights.push(r.floats(&line, output_dim)?);
                }
                let line = r.field("hidden_bias")?;
                let hidden_bias = r.floats(&line, hidden_units)?;
                let line = r.field("output_weights")?;
                let output_weights = r.floats(&line, hidden_units)?;
                let line = r.field("output_bias")?;
                let output_bias = r.float(&line)?;
                TrainedClassifier::Mlp(MlpModel {
                    hidden_weights,
                    hidden_bias,
                    output_weights,
                    output_bias,
                })
            }
            other => {
                return Err(Error::Schema(format!("unknown classifier kind {other:?}")));
            }
        };

        r.expect("end")?;
        r.expect_eof()?;

        Ok(ModelFile {
            pipeline_mode,
            feature_names,
            seed,
            config_digest,
            created,
            norm,
            pca,
            classifier,
        })
    }
}

/// Line-oriented parser with 1-based line numbers in every diagnostic.
struct Reader<'a> {
    lines: Vec<&'a str>,
    pos: usize,
}

impl<'a> Reader<'a> {
    fn new(text: &'a str) -> Self {
        Reader { lines: text.lines().collect(), pos: 0 }
    }

    fn line_no(&self) -> usize {
        self.pos
    }

    fn schema(&self, message: &str) -> Error {
        Error::Schema(format!("model file line {}: {message}", self.pos))
    }

    fn next(&mut self, what: &str) -> Result<&'a str> {
        let line = self
            .lines
            .get(self.pos)
            .copied()
            .ok_or_else(|| Error::Schema(format!("model file ended early: expected {what}")))?;
        self.pos += 1;
        Ok(line)
    }

    fn expect(&mut self, literal: &str) -> Result<()> {
        let line = self.next(&format!("{literal:?}"))?;
        if line != literal {
            return Err(self.schema(&format!("expected {literal:?}, found {line:?}")));
        }
        Ok(())
    }

    fn expect_eof(&mut self) -> Result<()> {
        while let Some(line) = self.lines.get(self.pos) {
            if !line.trim().is_empty() {
                return Err(Error::Schema(format!(
                    "model file line {}: unexpected content after end marker",
                    self.pos + 1
                )));
            }
            self.pos += 1;
        }
        Ok(())
    }

    /// Consumes a `key: value` line and returns the value.
    fn field(&mut self, key: &str) -> Result<String> {
        let line = self.next(&format!("field {key:?}"))?;
        let prefix = format!("{key}: ");
        match line.strip_prefix(&prefix) {
            Some(rest) => Ok(rest.to_string()),
            None if line == format!("{key}:") => Ok(String::new()),
            None => Err(self.schema(&format!("expected field {key:?}, found {line:?}"))),
        }
    }

    fn parse_field<T: std::str::FromStr>(&mut self, key: &str) -> Result<T> {
        let value = self.field(key)?;
        value
            .parse()
            .map_err(|_| self.schema(&format!("field {key:?} has unparseable value {value:?}")))
    }

    fn float(&self, token: &str) -> Result<f64> {
        let value: f64 = token
            .parse()
            .map_err(|_| self.schema(&format!("{token:?} is not a number")))?;
        if !value.is_finite() {
            return Err(self.schema(&format!("{token:?} is not finite")));
        }
        Ok(value)
    }

    fn floats(&self, text: &str, expected: usize) -> Result<Vec<f64>> {
        let values: Vec<f64> = text
            .split_whitespace()
            .map(|t| self.float(t))
            .collect::<Result<_>>()?;
        if values.len() != expected {
            return Err(self.schema(&format!(
                "expected {expected} numbers, found {}",
                values.len()
            )));
        }
        Ok(values)
    }
}
