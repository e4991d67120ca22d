//! `itd score`: per-row margins and decisions from a saved model, as
//! `user,day,margin,prediction` CSV. Labels in the input are ignored.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use itd_core::error::{Error, Result};

use crate::commands::emit;
use crate::model_file::ModelFile;

#[derive(Debug, clap::Args)]
pub struct ScoreArgs {
    /// Saved model file.
    #[arg(long, value_name = "PATH")]
    pub model: PathBuf,

    /// Canonical feature CSV to score (label values are ignored).
    #[arg(long, value_name = "PATH")]
    pub data: PathBuf,

    /// Output CSV path (stdout when omitted).
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

pub fn run(args: &ScoreArgs, out_dir: Option<&Path>) -> Result<()> {
    let model = ModelFile::load(&args.model)?;
    let table = itd_core::table::read_feature_csv_path(&args.data)?;
    model.check_compatible(table.column_names())?;
    if table.has_missing() {
        return Err(Error::Parameter(format!(
            "{} contains empty cells; margins are undefined on missing values",
            args.data.display()
        )));
    }
    let keys = table.row_keys().ok_or_else(|| {
        Error::Schema("scoring requires (user, day) row keys".into())
    })?;

    let mut out = String::from("user,day,margin,prediction\n");
    for (key, row) in keys.iter().zip(table.rows()) {
        let margin = model.margin_raw(row)?;
        let prediction = u8::from(margin > 0.0);
        let _ = writeln!(
            out,
            "{},{},{margin:.16e},{prediction}",
            key.user,
            key.day.format("%Y-%m-%d")
        );
    }
    emit(&out, args.out.as_deref(), out_dir, "score table")
}
