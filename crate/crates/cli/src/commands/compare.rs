//! `itd compare`: train the full roster on one shared prepared split and
//! tabulate held-out accuracy and AUC, marking the boosted model.

use std::path::{Path, PathBuf};

use itd_core::error::Result;
use itd_core::metrics::{compute_metrics, confusion, roc_curve};
use itd_core::preprocess::run_pipeline;

use crate::commands::{emit, fit_classifier};
use crate::config::{ModelChoice, ModelHyperArgs, PipelineArgs, RunConfig, SourceArgs};
use crate::report::{self, CompareRow};

#[derive(Debug, clap::Args)]
#[command(group(clap::ArgGroup::new("data_source").required(true).args(["data", "synth"])))]
pub struct CompareArgs {
    #[command(flatten)]
    pub source: SourceArgs,

    #[command(flatten)]
    pub pipeline: PipelineArgs,

    #[command(flatten)]
    pub hyper: ModelHyperArgs,

    /// Where to write the TSV comparison table (stdout when omitted).
    #[arg(long = "out-table", value_name = "PATH")]
    pub out_table: Option<PathBuf>,
}

const ROSTER: [ModelChoice; 4] = [
    ModelChoice::GaussianNb,
    ModelChoice::LinearSvm,
    ModelChoice::Mlp,
    ModelChoice::AdaBoost,
];

pub fn run(args: &CompareArgs, out_dir: Option<&Path>) -> Result<()> {
    let config = RunConfig::from_args("compare", &args.source, &args.pipeline, &args.hyper, None)?;
    let table = config.load_table()?;
    let prepared = run_pipeline(&table, &config.pipeline_config())?;

    let mut rows = Vec::with_capacity(ROSTER.len());
    for choice in ROSTER {
        let (classifier, _, _) = fit_classifier(choice, &config, &prepared.train)?;
        let margins: Vec<f64> = prepared
            .test
            .rows()
            .iter()
            .map(|row| classifier.margin(row))
            .collect::<Result<_>>()?;
        let predictions: Vec<u8> = margins.iter().map(|m| (*m > 0.0) as u8).collect();
        let cm = confusion(&predictions, prepared.test.labels())?;
        let metrics = compute_metrics(&cm)?;
        let roc = roc_curve(&margins, prepared.test.labels())?;
        rows.push(CompareRow {
            name: choice.as_str(),
            accuracy: metrics.accuracy,
            auc: roc.auc,
            proposed: choice == ModelChoice::AdaBoost,
        });
    }

    let table_text = report::compare_table(&config, &rows);
    emit(&table_text, args.out_table.as_deref(), out_dir, "comparison table")
}
