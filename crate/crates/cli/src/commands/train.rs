//! `itd train`: run the preparation pipeline, fit one model, and persist
//! the model file, the training report, and (optionally) the held-out
//! test rows.

use std::path::{Path, PathBuf};

use itd_core::error::Result;
use itd_core::metrics::{compute_metrics, confusion, roc_curve};
use itd_core::preprocess::run_pipeline;

use crate::commands::{emit, fit_classifier};
use crate::config::{
    created_stamp, resolve_out, ModelChoice, ModelHyperArgs, PipelineArgs, RunConfig, SourceArgs,
};
use crate::model_file::ModelFile;
use crate::report;

#[derive(Debug, clap::Args)]
#[command(group(clap::ArgGroup::new("data_source").required(true).args(["data", "synth"])))]
pub struct TrainArgs {
    #[command(flatten)]
    pub source: SourceArgs,

    #[command(flatten)]
    pub pipeline: PipelineArgs,

    #[command(flatten)]
    pub hyper: ModelHyperArgs,

    /// Which classifier to train.
    #[arg(long, default_value = "adaboost")]
    pub model: ModelChoice,

    /// Where to write the model file.
    #[arg(long = "out-model", value_name = "PATH", default_value = "model.itd")]
    pub out_model: PathBuf,

    /// Where to write the training report (stdout when omitted).
    #[arg(long = "out-report", value_name = "PATH")]
    pub out_report: Option<PathBuf>,

    /// Write the held-out test rows (original feature space) as a
    /// canonical CSV, ready for `evaluate`.
    #[arg(long = "out-test", value_name = "PATH")]
    pub out_test: Option<PathBuf>,
}

pub fn run(args: &TrainArgs, out_dir: Option<&Path>) -> Result<()> {
    let config =
        RunConfig::from_args("train", &args.source, &args.pipeline, &args.hyper, Some(args.model))?;
    let table = config.load_table()?;
    let prepared = run_pipeline(&table, &config.pipeline_config())?;

    let (classifier, training_lines, machine_lines) =
        fit_classifier(args.model, &config, &prepared.train)?;

    // Resubstitution scores on the (projected) training half.
    let margins: Vec<f64> = prepared
        .train
        .rows()
        .iter()
        .map(|row| classifier.margin(row))
        .collect::<Result<_>>()?;
    let predictions: Vec<u8> = margins.iter().map(|m| (*m > 0.0) as u8).collect();
    let cm = confusion(&predictions, prepared.train.labels())?;
    let metrics = compute_metrics(&cm)?;
    let roc = roc_curve(&margins, prepared.train.labels())?;

    let model_file = ModelFile {
        pipeline_mode: config.mode,
        feature_names: table.column_names().to_vec(),
        seed: config.seed,
        config_digest: config.digest(),
        created: created_stamp(),
        norm: prepared.norm.clone(),
        pca: prepared.pca.clone(),
        classifier,
    };
    let model_path = resolve_out(&args.out_model, out_dir);
    model_file.save(&model_path)?;

    if let Some(test_path) = &args.out_test {
        let resolved = resolve_out(test_path, out_dir);
        itd_core::table::write_feature_csv_path(&prepared.test_raw, &resolved)?;
        println!(
            "wrote {} held-out rows to {}",
            prepared.test_raw.n_rows(),
            resolved.display()
        );
    }

    let report_text = report::train_report(
        &config,
        &prepared,
        &training_lines,
        &machine_lines,
        (&cm, &metrics, roc.auc),
    );
    emit(&report_text, args.out_report.as_deref(), out_dir, "training report")?;
    println!("wrote model to {}", model_path.display());
    Ok(())
}
