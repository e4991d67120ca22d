//! `itd evaluate`: score a labelled canonical CSV with a saved model and
//! report confusion counts, percentage metrics, and the ROC curve.

use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use itd_core::error::{Error, Result};
use itd_core::metrics::{compute_metrics, confusion, roc_curve};

use crate::commands::emit;
use crate::config::resolve_out;
use crate::model_file::ModelFile;
use crate::report;

#[derive(Debug, clap::Args)]
pub struct EvaluateArgs {
    /// Saved model file.
    #[arg(long, value_name = "PATH")]
    pub model: PathBuf,

    /// Labelled canonical feature CSV to score.
    #[arg(long, value_name = "PATH")]
    pub data: PathBuf,

    /// Where to write the evaluation report (stdout when omitted).
    #[arg(long = "out-report", value_name = "PATH")]
    pub out_report: Option<PathBuf>,

    /// Optionally write the ROC curve as `fpr,tpr` CSV for plotting.
    #[arg(long = "roc-csv", value_name = "PATH")]
    pub roc_csv: Option<PathBuf>,
}

pub fn run(args: &EvaluateArgs, out_dir: Option<&Path>) -> Result<()> {
    let model = ModelFile::load(&args.model)?;
    let table = itd_core::table::read_feature_csv_path(&args.data)?;
    model.check_compatible(table.column_names())?;
    if table.has_missing() {
        return Err(Error::Parameter(format!(
            "{} contains empty cells; clean the data first (train --clean-policy drop \
             writes audited tables)",
            args.data.display()
        )));
    }

    let margins: Vec<f64> = table
        .rows()
        .iter()
        .map(|row| model.margin_raw(row))
        .collect::<Result<_>>()?;
    let predictions: Vec<u8> = margins.iter().map(|m| (*m > 0.0) as u8).collect();
    let cm = confusion(&predictions, table.labels())?;
    let metrics = compute_metrics(&cm)?;
    let roc = roc_curve(&margins, table.labels())?;

    let report_text = report::eval_report(
        &model,
        &args.data.display().to_string(),
        table.n_rows(),
        table.class_counts(),
        &cm,
        &metrics,
        &roc,
    );
    emit(&report_text, args.out_report.as_deref(), out_dir, "evaluation report")?;

    if let Some(roc_path) = &args.roc_csv {
        let resolved = resolve_out(roc_path, out_dir);
        let file = File::create(&resolved)?;
        roc.write_csv(BufWriter::new(file))?;
        println!("wrote ROC curve ({} points) to {}", roc.points.len(), resolved.display());
    }
    Ok(())
}
