//! `itd` — command-line front end for the insider-threat detection
//! toolkit.
//!
//! Six subcommands cover the full workflow: `synth` and `ingest` produce
//! canonical feature tables, `train` fits and persists a model, `evaluate`
//! and `score` apply a saved model, and `compare` benchmarks the roster on
//! one shared split. All randomness flows from `--seed`, so every command
//! is bit-reproducible given identical flags and inputs.

mod commands;
mod config;
mod model_file;
mod report;

use std::path::PathBuf;

use clap::Parser;

use itd_core::error::Error;

/// Usage and invalid-parameter problems.
pub const EXIT_USAGE: i32 = 2;
/// Filesystem problems.
pub const EXIT_IO: i32 = 3;
/// Malformed files and shape mismatches.
pub const EXIT_SCHEMA: i32 = 4;
/// Data that defeats the computation (single-class sets, numerical
/// failure).
pub const EXIT_DATA: i32 = 5;

/// Maps an error to its documented exit code.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parameter(_) => EXIT_USAGE,
        Error::Io(_) => EXIT_IO,
        Error::Schema(_) | Error::Shape(_) => EXIT_SCHEMA,
        Error::Class(_) | Error::Numerical(_) => EXIT_DATA,
    }
}

#[derive(Parser)]
#[command(
    name = "itd",
    version,
    about = "Insider-threat detection on user-activity logs: deterministic \
             preprocessing, boosted-stump detection, baselines, and metrics"
)]
struct Cli {
    /// Directory that relative output paths are joined onto.
    #[arg(long = "out-dir", global = true, env = "ITD_OUT_DIR", value_name = "DIR")]
    out_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Subcommand)]
enum Command {
    /// Generate a seeded synthetic benchmark table
    Synth(commands::synth::SynthArgs),
    /// Parse raw activity logs into the canonical feature CSV
    Ingest(commands::ingest::IngestArgs),
    /// Run the preparation pipeline and train one model
    Train(commands::train::TrainArgs),
    /// Score labelled data with a saved model and report metrics
    Evaluate(commands::evaluate::EvaluateArgs),
    /// Train the full roster on one shared split and tabulate accuracy/AUC
    Compare(commands::compare::CompareArgs),
    /// Emit per-row margins and decisions from a saved model
    Score(commands::score::ScoreArgs),
}

/// Parses arguments from the environment, runs the chosen command, and
/// returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let out_dir = cli.out_dir.as_deref();
    if let Some(dir) = out_dir {
        if let Err(err) = std::fs::create_dir_all(dir) {
            eprintln!("error: cannot create output directory {}: {err}", dir.display());
            return EXIT_IO;
        }
    }
    let result = match &cli.command {
        Command::Synth(args) => commands::synth::run(args, out_dir),
        Command::Ingest(args) => commands::ingest::run(args, out_dir),
        Command::Train(args) => commands::train::run(args, out_dir),
        Command::Evaluate(args) => commands::evaluate::run(args, out_dir),
        Command::Compare(args) => commands::compare::run(args, out_dir),
        Command::Score(args) => commands::score::run(args, out_dir),
    };
    match result {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code(&err)
        }
    }
}
