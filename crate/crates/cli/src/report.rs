//! Report rendering: training reports, evaluation reports, and the model
//! comparison table. Human-readable sections print percentages with one
//! decimal and AUC with two; the `[machine]` section repeats every number
//! at full precision so downstream tooling never re-parses rounded values.

use std::fmt::Write as _;

use itd_core::metrics::{ConfusionMatrix, MetricSet, RocCurve};
use itd_core::preprocess::{CleanReport, PipelineMode, PreparedData};

use crate::config::RunConfig;
use crate::model_file::ModelFile;

/// Percentage with one decimal: 0.982 -> "98.2".
pub fn pct1(fraction: f64) -> String {
    format!("{:.1}", fraction * 100.0)
}

/// AUC with two decimals.
pub fn auc2(auc: f64) -> String {
    format!("{auc:.2}")
}

fn degenerate_note(metrics: &MetricSet) -> Option<String> {
    if !metrics.degenerate.any() {
        return None;
    }
    let mut flagged = Vec::new();
    if metrics.degenerate.precision {
        flagged.push("precision");
    }
    if metrics.degenerate.recall {
        flagged.push("recall");
    }
    if metrics.degenerate.f1 {
        flagged.push("f1");
    }
    Some(format!(
        "note: zero-denominator metrics reported as 0.0: {}",
        flagged.join(", ")
    ))
}

/// Human-readable metric lines (confusion counts, percentages, AUC).
pub fn metrics_lines_human(cm: &ConfusionMatrix, metrics: &MetricSet, auc: f64) -> Vec<String> {
    let mut lines = vec![
        format!("true_positives={}", cm.true_pos),
        format!("false_positives={}", cm.false_pos),
        format!("false_negatives={}", cm.false_neg),
        format!("true_negatives={}", cm.true_neg),
        format!("accuracy={}%", pct1(metrics.accuracy)),
        format!("precision={}%", pct1(metrics.precision)),
        format!("recall={}%", pct1(metrics.recall)),
        format!("f1={}%", pct1(metrics.f1)),
        format!("auc={}", auc2(auc)),
    ];
    if let Some(note) = degenerate_note(metrics) {
        lines.push(note);
    }
    lines
}

/// Full-precision metric lines for the `[machine]` section.
pub fn metrics_lines_machine(
    prefix: &str,
    cm: &ConfusionMatrix,
    metrics: &MetricSet,
    auc: f64,
) -> Vec<String> {
    vec![
        format!("{prefix}tp={}", cm.true_pos),
        format!("{prefix}fp={}", cm.false_pos),
        format!("{prefix}fn={}", cm.false_neg),
        format!("{prefix}tn={}", cm.true_neg),
        format!("{prefix}accuracy={}", metrics.accuracy),
        format!("{prefix}precision={}", metrics.precision),
        format!("{prefix}recall={}", metrics.recall),
        format!("{prefix}f1={}", metrics.f1),
        format!("{prefix}auc={auc}"),
    ]
}

fn clean_lines(clean: &CleanReport) -> Vec<String> {
    clean.machine_record().lines().map(str::to_string).collect()
}

fn push_section(out: &mut String, title: &str, lines: &[String]) {
    let _ = writeln!(out, "[{title}]");
    for line in lines {
        let _ = writeln!(out, "{line}");
    }
    let _ = writeln!(out);
}

/// The full training report.
#[allow(clippy::too_many_arguments)]
pub fn train_report(
    config: &RunConfig,
    prepared: &PreparedData,
    training_lines: &[String],
    machine_training: &[String],
    resubstitution: (&ConfusionMatrix, &MetricSet, f64),
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "itd training report");
    let _ = writeln!(out, "===================");
    let _ = writeln!(out);

    let mut config_lines = config.lines();
    config_lines.push(format!("digest={}", config.digest()));
    push_section(&mut out, "config", &config_lines);

    push_section(&mut out, "cleaning", &clean_lines(&prepared.clean));

    let (train_neg, train_pos) = prepared.train.class_counts();
    let (test_neg, test_pos) = prepared.test.class_counts();
    let pipeline_lines = vec![
        format!("stages={}", prepared.stages.join(" -> ")),
        format!("rows_train={}", prepared.train.n_rows()),
        format!("rows_test={}", prepared.test.n_rows()),
        format!("train_class_counts={train_neg}/{train_pos}"),
        format!("test_class_counts={test_neg}/{test_pos}"),
        format!("synthetic_rows={}", prepared.smote_provenance.len()),
        format!(
            "pca_components={} of {}",
            prepared.pca.n_components(),
            prepared.pca.input_dim()
        ),
        format!(
            "explained_variance={}",
            prepared
                .pca
                .explained_variance_ratio
                .iter()
                .map(|v| format!("{v:.4}"))
                .collect::<Vec<_>>()
                .join(" ")
        ),
    ];
    push_section(&mut out, "pipeline", &pipeline_lines);

    push_section(&mut out, "training", training_lines);

    let (cm, metrics, auc) = resubstitution;
    push_section(&mut out, "resubstitution", &metrics_lines_human(cm, metrics, auc));

    let mut machine = vec![
        format!("digest={}", config.digest()),
        format!("rows_train={}", prepared.train.n_rows()),
        format!("rows_test={}", prepared.test.n_rows()),
    ];
    machine.extend(machine_training.iter().cloned());
    machine.extend(metrics_lines_machine("train_", cm, metrics, auc));
    push_section(&mut out, "machine", &machine);

    out
}

/// The evaluation report for one model on one data file.
pub fn eval_report(
    model: &ModelFile,
    data_label: &str,
    n_rows: usize,
    class_counts: (usize, usize),
    cm: &ConfusionMatrix,
    metrics: &MetricSet,
    roc: &RocCurve,
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "itd evaluation report");
    let _ = writeln!(out, "=====================");
    let _ = writeln!(out);

    let model_lines = vec![
        format!("kind={}", model.classifier.kind_tag()),
        format!("pipeline_mode={}", model.pipeline_mode.as_str()),
        format!("feature_names={}", model.feature_names.join(",")),
        format!("seed={}", model.seed),
        format!("config_digest={}", model.config_digest),
        format!("created={}", model.created),
    ];
    push_section(&mut out, "model", &model_lines);

    match model.pipeline_mode {
        PipelineMode::FullTableFit => {
            let _ = writeln!(
                out,
                "note: this model was trained with the full-table-fit stage order \
                 (oversampling and transform fitting ran before the split), so scores \
                 on rows drawn from the training table read optimistic."
            );
        }
        PipelineMode::LeakageSafe => {
            let _ = writeln!(
                out,
                "note: this model was trained leakage-safe (split before any fitting); \
                 scores on held-out rows are honest estimates."
            );
        }
    }
    let _ = writeln!(out);

    let data_lines = vec![
        format!("source={data_label}"),
        format!("rows={n_rows}"),
        format!("benign={}", class_counts.0),
        format!("insider={}", class_counts.1),
    ];
    push_section(&mut out, "data", &data_lines);

    push_section(&mut out, "metrics", &metrics_lines_human(cm, metrics, roc.auc));

    let mut machine = metrics_lines_machine("", cm, metrics, roc.auc);
    machine.push(format!("roc_points={}", roc.points.len()));
    push_section(&mut out, "machine", &machine);

    out
}

/// One row of the comparison table.
pub struct CompareRow {
    pub name: &'static str,
    pub accuracy: f64,
    pub auc: f64,
    pub proposed: bool,
}

/// Tab-separated comparison table with a `#` metadata line carrying the
/// resolved config digest.
pub fn compare_table(config: &RunConfig, rows: &[CompareRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# itd compare source={} mode={} seed={} digest={}",
        config.source.label(),
        config.mode.as_str(),
        config.seed,
        config.digest()
    );
    let _ = writeln!(out, "model\taccuracy_pct\tauc\tnote");
    for row in rows {
        let _ = writeln!(
            out,
            "{}\t{:.2}\t{:.4}\t{}",
            row.name,
            row.accuracy * 100.0,
            row.auc,
            if row.proposed { "proposed" } else { "baseline" }
        );
    }
    out
}
