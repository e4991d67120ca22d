//! `itd ingest`: parse per-channel activity logs, aggregate per-user-day
//! counts, optionally join insider labels, and write the canonical feature
//! CSV.

use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use chrono::NaiveDate;

use itd_core::error::{Error, Result};
use itd_core::ingest::{aggregate_daily_features, parse_activity_log, Channel, InsiderKey};

use crate::config::resolve_out;

#[derive(Debug, clap::Args)]
pub struct IngestArgs {
    /// Logon log (CSV with `user` and `date` columns).
    #[arg(long, value_name = "PATH")]
    pub logons: Option<PathBuf>,

    /// Email log.
    #[arg(long, value_name = "PATH")]
    pub emails: Option<PathBuf>,

    /// File-access log.
    #[arg(long = "file-accesses", value_name = "PATH")]
    pub file_accesses: Option<PathBuf>,

    /// Web-visit log.
    #[arg(long = "web-visits", value_name = "PATH")]
    pub web_visits: Option<PathBuf>,

    /// Ground-truth insiders, one per line: `user` (every day) or
    /// `user,YYYY-MM-DD` (that day only). `#` starts a comment.
    #[arg(long, value_name = "PATH")]
    pub labels: Option<PathBuf>,

    /// Output path for the canonical feature CSV.
    #[arg(long, value_name = "PATH")]
    pub out: PathBuf,
}

fn parse_label_file(path: &Path) -> Result<Vec<InsiderKey>> {
    let text = std::fs::read_to_string(path)?;
    let mut keys = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match line.split_once(',') {
            Some((user, day)) => {
                let day = NaiveDate::parse_from_str(day.trim(), "%Y-%m-%d").map_err(|_| {
                    Error::Schema(format!(
                        "{}:{}: invalid day {:?} (expected YYYY-MM-DD)",
                        path.display(),
                        i + 1,
                        day.trim()
                    ))
                })?;
                keys.push(InsiderKey::UserDay(user.trim().to_string(), day));
            }
            None => keys.push(InsiderKey::User(line.to_string())),
        }
    }
    Ok(keys)
}

pub fn run(args: &IngestArgs, out_dir: Option<&Path>) -> Result<()> {
    let sources: Vec<(&PathBuf, Channel)> = [
        (args.logons.as_ref(), Channel::Logon),
        (args.emails.as_ref(), Channel::Email),
        (args.file_accesses.as_ref(), Channel::FileAccess),
        (args.web_visits.as_ref(), Channel::WebVisit),
    ]
    .into_iter()
    .filter_map(|(path, channel)| path.map(|p| (p, channel)))
    .collect();
    if sources.is_empty() {
        return Err(Error::Parameter(
            "at least one channel log is required: --logons, --emails, --file-accesses, \
             or --web-visits"
                .into(),
        ));
    }

    let mut events = Vec::new();
    let mut n_issues = 0usize;
    for (path, channel) in sources {
        let file = File::open(path).map_err(|e| {
            Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
        })?;
        let (parsed, issues) = parse_activity_log(BufReader::new(file), channel)?;
        for issue in &issues {
            eprintln!("warning: {}:{}: {}", path.display(), issue.line, issue.reason);
        }
        n_issues += issues.len();
        events.extend(parsed);
    }

    let mut table = aggregate_daily_features(&events);
    if let Some(labels_path) = &args.labels {
        let keys = parse_label_file(labels_path)?;
        let (labelled, warnings) = itd_core::ingest::join_labels(&table, &keys)?;
        for warning in &warnings {
            eprintln!("warning: {warning}");
        }
        table = labelled;
    }

    let path = resolve_out(&args.out, out_dir);
    itd_core::table::write_feature_csv_path(&table, &path)?;
    let (benign, insider) = table.class_counts();
    println!(
        "aggregated {} events into {} user-day rows ({benign} benign, {insider} insider, \
         {n_issues} lines skipped); wrote {}",
        events.len(),
        table.n_rows(),
        path.display()
    );
    Ok(())
}
