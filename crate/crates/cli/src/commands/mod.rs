//! One module per subcommand, plus the model-fitting helper `train` and
//! `compare` share.

pub mod compare;
pub mod evaluate;
pub mod ingest;
pub mod score;
pub mod synth;
pub mod train;

use std::path::Path;

use itd_core::baselines::{train_baseline, BaselineKind, BaselineModel};
use itd_core::boosting::{train_adaboost, StopReason};
use itd_core::error::Result;
use itd_core::FeatureTable;

use crate::config::{resolve_out, ModelChoice, RunConfig};
use crate::model_file::TrainedClassifier;

/// Weighted-error clamp floor for boosting; keeps the vote weight finite
/// when a stump is perfect on the weighted sample.
pub(crate) const EPS_FLOOR: f64 = 1e-10;

/// Writes `text` to the resolved path, or to stdout when no path is given.
pub(crate) fn emit(
    text: &str,
    path: Option<&Path>,
    out_dir: Option<&Path>,
    what: &str,
) -> Result<()> {
    match path {
        Some(path) => {
            let resolved = resolve_out(path, out_dir);
            std::fs::write(&resolved, text)?;
            println!("wrote {what} to {}", resolved.display());
            Ok(())
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn join_display<T: std::fmt::Display>(values: impl Iterator<Item = T>) -> String {
    values.map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

/// Trains the chosen classifier on the prepared (projected) training half.
/// Returns the classifier plus the `[training]` report lines and their
/// full-precision `[machine]` counterparts.
pub(crate) fn fit_classifier(
    choice: ModelChoice,
    config: &RunConfig,
    train: &FeatureTable,
) -> Result<(TrainedClassifier, Vec<String>, Vec<String>)> {
    match choice {
        ModelChoice::AdaBoost => {
            let fit = train_adaboost(
                train.rows(),
                train.labels(),
                train.column_names(),
                config.rounds,
                EPS_FLOOR,
            )?;
            let (stop_human, stop_tag) = match &fit.stop {
                StopReason::MaxRounds => ("max-rounds".to_string(), "max-rounds"),
                StopReason::PerfectFit { epsilon } => {
                    (format!("perfect-fit (epsilon={epsilon})"), "perfect-fit")
                }
                StopReason::NoEdge { epsilon } => {
                    (format!("no-edge (epsilon={epsilon})"), "no-edge")
                }
            };
            let mut human = vec![
                "model=adaboost".to_string(),
                format!("rounds_used={} of {}", fit.model.rounds(), config.rounds),
                format!("stop={stop_human}"),
            ];
            for (i, round) in fit.rounds.iter().enumerate() {
                human.push(format!(
                    "round {}: epsilon={:.6} alpha={:.6}",
                    i + 1,
                    round.epsilon,
                    round.alpha
                ));
            }
            let machine = vec![
                "model=adaboost".to_string(),
                format!("rounds_used={}", fit.model.rounds()),
                format!("stop={stop_tag}"),
                format!(
                    "round_epsilon={}",
                    join_display(fit.rounds.iter().map(|r| r.epsilon))
                ),
                format!("round_alpha={}", join_display(fit.rounds.iter().map(|r| r.alpha))),
            ];
            Ok((TrainedClassifier::AdaBoost(fit.model), human, machine))
        }
        ModelChoice::GaussianNb => {
            let BaselineModel::GaussianNb(nb) =
                train_baseline(&BaselineKind::GaussianNb, train.rows(), train.labels())?
            else {
                unreachable!("kind dispatch");
            };
            let human = vec![
                "model=gaussian-nb".to_string(),
                format!("log_prior_benign={:.6}", nb.log_prior_neg),
                format!("log_prior_insider={:.6}", nb.log_prior_pos),
            ];
            let machine = vec![
                "model=gaussian-nb".to_string(),
                format!("log_prior_benign={}", nb.log_prior_neg),
                format!("log_prior_insider={}", nb.log_prior_pos),
            ];
            Ok((TrainedClassifier::GaussianNb(nb), human, machine))
        }
        ModelChoice::LinearSvm => {
            let kind = BaselineKind::LinearSvm {
                lambda: config.svm_lambda,
                epochs: config.svm_epochs,
                seed: config.model_seed(),
            };
            let BaselineModel::LinearSvm(svm) =
                train_baseline(&kind, train.rows(), train.labels())?
            else {
                unreachable!("kind dispatch");
            };
            let objective = svm.objective(train.rows(), train.labels(), config.svm_lambda)?;
            let human = vec![
                "model=linear-svm".to_string(),
                format!("final_objective={objective:.6}"),
            ];
            let machine = vec![
                "model=linear-svm".to_string(),
                format!("final_objective={objective}"),
            ];
            Ok((TrainedClassifier::LinearSvm(svm), human, machine))
        }
        ModelChoice::Mlp => {
            let kind = BaselineKind::Mlp {
                hidden_units: config.mlp_hidden,
                learning_rate: config.mlp_rate,
                epochs: config.mlp_epochs,
                seed: config.model_seed(),
            };
            let BaselineModel::Mlp(mlp) = train_baseline(&kind, train.rows(), train.labels())?
            else {
                unreachable!("kind dispatch");
            };
            let loss = mlp.squared_error_loss(train.rows(), train.labels())?;
            let human =
                vec!["model=mlp".to_string(), format!("final_loss={loss:.6}")];
            let machine = vec!["model=mlp".to_string(), format!("final_loss={loss}")];
            Ok((TrainedClassifier::Mlp(mlp), human, machine))
        }
    }
}
