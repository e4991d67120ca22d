//! Resolved run configuration shared by `train` and `compare`: data source,
//! pipeline settings, model hyperparameters, and the digest that ties every
//! report back to the exact settings that produced it.

use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use itd_core::error::{Error, Result};
use itd_core::ingest::{generate_synthetic, SynthConfig};
use itd_core::numerics::ComponentSelector;
use itd_core::preprocess::{CleanPolicy, PipelineConfig, PipelineMode, SmoteConfig};
use itd_core::FeatureTable;

/// Roster entry for `--model` and the comparison table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ModelChoice {
    #[value(name = "adaboost")]
    AdaBoost,
    #[value(name = "gaussian-nb")]
    GaussianNb,
    #[value(name = "linear-svm")]
    LinearSvm,
    #[value(name = "mlp")]
    Mlp,
}

impl ModelChoice {
    pub fn as_str(&self) -> &'static str {
        match self {
            ModelChoice::AdaBoost => "adaboost",
            ModelChoice::GaussianNb => "gaussian-nb",
            ModelChoice::LinearSvm => "linear-svm",
            ModelChoice::Mlp => "mlp",
        }
    }
}

pub fn parse_clean_policy(text: &str) -> Result<CleanPolicy> {
    match text {
        "report" => Ok(CleanPolicy::ReportOnly),
        "drop" => Ok(CleanPolicy::DropRows),
        other => Err(Error::Parameter(format!(
            "unknown clean policy {other:?}; expected `report` or `drop`"
        ))),
    }
}

pub fn clean_policy_as_str(policy: CleanPolicy) -> &'static str {
    match policy {
        CleanPolicy::ReportOnly => "report",
        CleanPolicy::DropRows => "drop",
    }
}

/// Where the rows come from: exactly one of a canonical CSV file or an
/// in-process synthetic benchmark.
#[derive(Debug, Clone, PartialEq)]
pub enum DataSource {
    File(PathBuf),
    Synth(SynthConfig),
}

impl DataSource {
    /// Canonical one-line rendering used in config listings and digests.
    pub fn label(&self) -> String {
        match self {
            DataSource::File(path) => format!("file:{}", path.display()),
            DataSource::Synth(s) => format!(
                "synth:benign={},insider={},noise={},separability={},seed={}",
                s.n_benign, s.n_insider, s.n_noise_features, s.separability, s.seed
            ),
        }
    }

    pub fn load(&self) -> Result<FeatureTable> {
        match self {
            DataSource::File(path) => itd_core::table::read_feature_csv_path(path),
            DataSource::Synth(config) => generate_synthetic(config),
        }
    }
}

/// Parses the `--synth` value: comma-separated `key=value` pairs with keys
/// `benign`, `insider`, `noise`, `separability`, `seed`; omitted keys take
/// the benchmark defaults.
pub fn parse_synth_spec(spec: &str) -> Result<SynthConfig> {
    let mut config = SynthConfig {
        n_benign: 4800,
        n_insider: 250,
        n_noise_features: 0,
        separability: 0.8,
        seed: 7,
    };
    if spec.trim().is_empty() {
        return Ok(config);
    }
    for part in spec.split(',') {
        let (key, value) = part.split_once('=').ok_or_else(|| {
            Error::Parameter(format!(
                "synth spec entry {part:?} is not key=value; expected keys \
                 benign, insider, noise, separability, seed"
            ))
        })?;
        let key = key.trim();
        let value = value.trim();
        let bad = |what: &str| {
            Error::Parameter(format!("synth spec {key}={value:?} is not a valid {what}"))
        };
        match key {
            "benign" => config.n_benign = value.parse().map_err(|_| bad("count"))?,
            "insider" => config.n_insider = value.parse().map_err(|_| bad("count"))?,
            "noise" => config.n_noise_features = value.parse().map_err(|_| bad("count"))?,
            "separability" => config.separability = value.parse().map_err(|_| bad("number"))?,
            "seed" => config.seed = value.parse().map_err(|_| bad("seed"))?,
            other => {
                return Err(Error::Parameter(format!(
                    "unknown synth spec key {other:?}; expected benign, insider, noise, \
                     separability, seed"
                )))
            }
        }
    }
    Ok(config)
}

/// Data-source flags shared by `train` and `compare`; exactly one must be
/// given (enforced by a clap group on the command).
#[derive(Debug, clap::Args)]
pub struct SourceArgs {
    /// Canonical feature CSV (header `user,day,<features...>,insider`).
    #[arg(long, value_name = "PATH")]
    pub data: Option<PathBuf>,

    /// Generate the table in-process instead of reading a file; value is a
    /// comma list of key=value pairs (keys: benign, insider, noise,
    /// separability, seed), empty for the default benchmark.
    #[arg(long, value_name = "SPEC")]
    pub synth: Option<String>,
}

impl SourceArgs {
    pub fn resolve(&self) -> Result<DataSource> {
        match (&self.data, &self.synth) {
            (Some(path), None) => Ok(DataSource::File(path.clone())),
            (None, Some(spec)) => Ok(DataSource::Synth(parse_synth_spec(spec)?)),
            // The clap group makes these unreachable from the binary, but
            // library callers can still construct them.
            _ => Err(Error::Parameter(
                "exactly one data source required: --data PATH or --synth SPEC".into(),
            )),
        }
    }
}

/// Preparation-pipeline flags shared by `train` and `compare`.
#[derive(Debug, clap::Args)]
pub struct PipelineArgs {
    /// Stage order: `paper` (oversample and fit transforms on the full
    /// table, then split) or `safe` (split first; fit on the training half
    /// only).
    #[arg(long, default_value = "safe", value_parser = PipelineMode::parse)]
    pub mode: PipelineMode,

    /// Keep the smallest set of principal components explaining at least
    /// this fraction of total variance.
    #[arg(long = "pca-variance", value_name = "FRACTION", default_value_t = 0.95)]
    pub pca_variance: f64,

    /// Keep exactly this many principal components instead.
    #[arg(long = "pca-components", value_name = "K", conflicts_with = "pca_variance")]
    pub pca_components: Option<usize>,

    /// Nearest minority neighbours SMOTE interpolates toward.
    #[arg(long = "smote-k", value_name = "K", default_value_t = 3)]
    pub smote_k: usize,

    /// Minority size target as a fraction of the majority (1.0 balances).
    #[arg(long = "smote-ratio", value_name = "RATIO", default_value_t = 1.0)]
    pub smote_ratio: f64,

    /// Fraction of rows assigned to the training half.
    #[arg(long = "train-fraction", value_name = "FRACTION", default_value_t = 0.8)]
    pub train_fraction: f64,

    /// Per-column z-score magnitude above which a cell counts as an
    /// outlier in the cleaning audit.
    #[arg(long = "z-threshold", value_name = "Z", default_value_t = 6.0)]
    pub z_threshold: f64,

    /// `report` only counts problems; `drop` removes offending rows.
    #[arg(long = "clean-policy", default_value = "report", value_parser = parse_clean_policy)]
    pub clean_policy: CleanPolicy,

    /// Master seed; the split, SMOTE, and model seeds derive from it.
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
}

/// Model hyperparameters shared by `train` and `compare`.
#[derive(Debug, clap::Args)]
pub struct ModelHyperArgs {
    /// Boosting rounds cap.
    #[arg(long, default_value_t = 50)]
    pub rounds: usize,

    /// Linear SVM regularisation strength.
    #[arg(long = "svm-lambda", value_name = "LAMBDA", default_value_t = 3e-2)]
    pub svm_lambda: f64,

    /// Linear SVM training epochs.
    #[arg(long = "svm-epochs", value_name = "N", default_value_t = 300)]
    pub svm_epochs: usize,

    /// MLP hidden-layer width.
    #[arg(long = "mlp-hidden", value_name = "N", default_value_t = 16)]
    pub mlp_hidden: usize,

    /// MLP gradient-descent learning rate.
    #[arg(long = "mlp-rate", value_name = "RATE", default_value_t = 1.5)]
    pub mlp_rate: f64,

    /// MLP training epochs.
    #[arg(long = "mlp-epochs", value_name = "N", default_value_t = 250)]
    pub mlp_epochs: usize,
}

/// Fully resolved settings for one `train` or `compare` run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: &'static str,
    pub source: DataSource,
    pub mode: PipelineMode,
    /// `None` means the full roster (`compare`).
    pub model: Option<ModelChoice>,
    pub rounds: usize,
    pub pca: ComponentSelector,
    pub smote_k: usize,
    pub smote_ratio: f64,
    pub train_fraction: f64,
    pub z_threshold: f64,
    pub clean_policy: CleanPolicy,
    pub seed: u64,
    pub svm_lambda: f64,
    pub svm_epochs: usize,
    pub mlp_hidden: usize,
    pub mlp_rate: f64,
    pub mlp_epochs: usize,
}

impl RunConfig {
    pub fn from_args(
        command: &'static str,
        source: &SourceArgs,
        pipeline: &PipelineArgs,
        hyper: &ModelHyperArgs,
        model: Option<ModelChoice>,
    ) -> Result<RunConfig> {
        let pca = match pipeline.pca_components {
            Some(k) => ComponentSelector::TopK(k),
            None => ComponentSelector::VarianceFraction(pipeline.pca_variance),
        };
        Ok(RunConfig {
            command,
            source: source.resolve()?,
            mode: pipeline.mode,
            model,
            rounds: hyper.rounds,
            pca,
            smote_k: pipeline.smote_k,
            smote_ratio: pipeline.smote_ratio,
            train_fraction: pipeline.train_fraction,
            z_threshold: pipeline.z_threshold,
            clean_policy: pipeline.clean_policy,
            seed: pipeline.seed,
            svm_lambda: hyper.svm_lambda,
            svm_epochs: hyper.svm_epochs,
            mlp_hidden: hyper.mlp_hidden,
            mlp_rate: hyper.mlp_rate,
            mlp_epochs: hyper.mlp_epochs,
        })
    }

    /// Seed for the stratified split.
    pub fn split_seed(&self) -> u64 {
        self.seed.wrapping_add(1)
    }

    /// Seed for SMOTE interpolation draws.
    pub fn smote_seed(&self) -> u64 {
        self.seed.wrapping_add(2)
    }

    /// Seed for model training (SVM shuffles, MLP init).
    pub fn model_seed(&self) -> u64 {
        self.seed.wrapping_add(3)
    }

    pub fn load_table(&self) -> Result<FeatureTable> {
        self.source.load()
    }

    pub fn pipeline_config(&self) -> PipelineConfig {
        PipelineConfig {
            mode: self.mode,
            smote: SmoteConfig {
                k_neighbors: self.smote_k,
                target_ratio: self.smote_ratio,
                seed: self.smote_seed(),
            },
            pca: self.pca,
            train_fraction: self.train_fraction,
            split_seed: self.split_seed(),
            z_threshold: self.z_threshold,
            clean_policy: self.clean_policy,
        }
    }

    fn pca_label(&self) -> String {
        match self.pca {
            ComponentSelector::TopK(k) => format!("components:{k}"),
            ComponentSelector::VarianceFraction(f) => format!("variance:{f}"),
        }
    }

    /// Canonical `key=value` listing, one line per setting, fixed order.
    /// Together with the input data this fully determines every output.
    pub fn lines(&self) -> Vec<String> {
        vec![
            format!("command={}", self.command),
            format!("source={}", self.source.label()),
            format!("mode={}", self.mode.as_str()),
            format!("model={}", self.model.map_or("all", |m| m.as_str())),
            format!("rounds={}", self.rounds),
            format!("pca={}", self.pca_label()),
            format!("smote_k={}", self.smote_k),
            format!("smote_ratio={}", self.smote_ratio),
            format!("train_fraction={}", self.train_fraction),
            format!("z_threshold={}", self.z_threshold),
            format!("clean_policy={}", clean_policy_as_str(self.clean_policy)),
            format!("seed={}", self.seed),
            format!("svm_lambda={}", self.svm_lambda),
            format!("svm_epochs={}", self.svm_epochs),
            format!("mlp_hidden={}", self.mlp_hidden),
            format!("mlp_rate={}", self.mlp_rate),
            format!("mlp_epochs={}", self.mlp_epochs),
        ]
    }

    /// `sha256:<hex>` over the canonical listing.
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        for line in self.lines() {
            hasher.update(line.as_bytes());
            hasher.update(b"\n");
        }
        let digest = hasher.finalize();
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        format!("sha256:{hex}")
    }
}

/// Joins a relative output path onto the chosen output directory; absolute
/// paths are used as given.
pub fn resolve_out(path: &Path, out_dir: Option<&Path>) -> PathBuf {
    match out_dir {
        Some(dir) if path.is_relative() => dir.join(path),
        _ => path.to_path_buf(),
    }
}

/// The timestamp recorded in model files: deterministic, taken from the
/// SOURCE_DATE_EPOCH convention when set, otherwise `unset` so identical
/// runs stay byte-identical.
pub fn created_stamp() -> String {
    match std::env::var("SOURCE_DATE_EPOCH") {
        Ok(value) => match value.parse::<u64>() {
            Ok(epoch) => format!("epoch:{epoch}"),
            Err(_) => "unset".to_string(),
        },
        Err(_) => "unset".to_string(),
    }
}
