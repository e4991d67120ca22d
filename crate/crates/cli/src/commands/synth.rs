//! `itd synth`: generate a seeded synthetic benchmark table.

use std::path::{Path, PathBuf};

use itd_core::error::Result;
use itd_core::ingest::{generate_synthetic, SynthConfig, SYNTH_GENERATOR_NOTE};

use crate::config::resolve_out;

#[derive(Debug, clap::Args)]
pub struct SynthArgs {
    /// Number of benign rows.
    #[arg(long, default_value_t = 4800)]
    pub benign: usize,

    /// Number of insider rows.
    #[arg(long, default_value_t = 250)]
    pub insider: usize,

    /// Extra label-independent noise columns.
    #[arg(long = "noise-features", default_value_t = 0)]
    pub noise_features: usize,

    /// How far the insider file-access and web-visit distributions shift
    /// above the benign baseline, from 0 (identical) to 1 (far apart).
    #[arg(long, default_value_t = 0.8)]
    pub separability: f64,

    #[arg(long, default_value_t = 7)]
    pub seed: u64,

    /// Output path for the canonical feature CSV.
    #[arg(long, value_name = "PATH")]
    pub out: PathBuf,

    /// Describe the generating distributions and exit without writing.
    #[arg(long, default_value_t = false)]
    pub describe: bool,
}

pub fn run(args: &SynthArgs, out_dir: Option<&Path>) -> Result<()> {
    if args.describe {
        println!("{SYNTH_GENERATOR_NOTE}");
        return Ok(());
    }
    let config = SynthConfig {
        n_benign: args.benign,
        n_insider: args.insider,
        n_noise_features: args.noise_features,
        separability: args.separability,
        seed: args.seed,
    };
    let table = generate_synthetic(&config)?;
    let path = resolve_out(&args.out, out_dir);
    itd_core::table::write_feature_csv_path(&table, &path)?;
    let (benign, insider) = table.class_counts();
    println!(
        "wrote {} rows to {}: {benign} benign, {insider} insider",
        table.n_rows(),
        path.display()
    );
    Ok(())
}
