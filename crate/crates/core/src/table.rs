//! The labelled feature table shared by every pipeline stage, plus its
//! canonical CSV representation.
//!
//! A [`FeatureTable`] is a dense `n x d` matrix of `f64` feature values with
//! one binary label per row and, optionally, one `(user, day)` key per row.
//! The canonical on-disk form is a CSV file with header
//! `user,day,<feature...>,insider`, one row per user-day.

use std::collections::HashSet;
use std::io;
use std::path::Path;

use chrono::NaiveDate;

use crate::error::{Error, Result};

/// Identity of one observation: which user, which calendar day.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RowKey {
    pub user: String,
    pub day: NaiveDate,
}

impl RowKey {
    pub fn new(user: impl Into<String>, day: NaiveDate) -> Self {
        RowKey { user: user.into(), day }
    }
}

/// Dense labelled feature matrix.
///
/// Invariants enforced by the constructors:
/// - every row has exactly `column_names.len()` values;
/// - labels are 0 (benign) or 1 (insider) and align with rows;
/// - `row_keys`, when present, aligns with rows;
/// - column names are unique, non-empty and free of separator characters;
/// - every value is finite — except for tables built via
///   [`FeatureTable::with_missing`], which may carry NaN cells so that the
///   cleaning audit can detect and report them. Infinities are never
///   accepted.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureTable {
    column_names: Vec<String>,
    rows: Vec<Vec<f64>>,
    labels: Vec<u8>,
    row_keys: Option<Vec<RowKey>>,
}

impl FeatureTable {
    /// Builds a table and checks every invariant, including finiteness of
    /// all values.
    pub fn new(
        column_names: Vec<String>,
        rows: Vec<Vec<f64>>,
        labels: Vec<u8>,
        row_keys: Option<Vec<RowKey>>,
    ) -> Result<Self> {
        Self::build(column_names, rows, labels, row_keys, false)
    }

    /// Like [`FeatureTable::new`] but tolerates NaN cells, which stand for
    /// missing values until a cleaning pass removes them.
    pub fn with_missing(
        column_names: Vec<String>,
        rows: Vec<Vec<f64>>,
        labels: Vec<u8>,
        row_keys: Option<Vec<RowKey>>,
    ) -> Result<Self> {
        Self::build(column_names, rows, labels, row_keys, true)
    }

    fn build(
        column_names: Vec<String>,
        rows: Vec<Vec<f64>>,
        labels: Vec<u8>,
        row_keys: Option<Vec<RowKey>>,
        allow_nan: bool,
    ) -> Result<Self> {
        let mut seen = HashSet::new();
        for name in &column_names {
            if name.is_empty() {
                return Err(Error::Schema("empty feature column name".into()));
            }
            if name.contains([',', '\t', '\n', '\r']) {
                return Err(Error::Schema(format!(
                    "feature column name {name:?} contains a separator character"
                )));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::Schema(format!("duplicate feature column name {name:?}")));
            }
        }
        let d = column_names.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != d {
                return Err(Error::Shape(format!(
                    "row {i} has {} values but the table has {d} columns",
                    row.len()
                )));
            }
            for (j, v) in row.iter().enumerate() {
                if v.is_infinite() || (!allow_nan && v.is_nan()) {
                    return Err(Error::Parameter(format!(
                        "non-finite value {v} at row {i}, column {j}"
                    )));
                }
            }
        }
        if labels.len() != rows.len() {
            return Err(Error::Shape(format!(
                "{} labels for {} rows",
                labels.len(),
                rows.len()
            )));
        }
        if let Some(bad) = labels.iter().position(|l| *l > 1) {
            return Err(Error::Parameter(format!(
                "label at row {bad} is {}, expected 0 or 1",
                labels[bad]
            )));
        }
        if let Some(keys) = &row_keys {
            if keys.len() != rows.len() {
                return Err(Error::Shape(format!(
                    "{} row keys for {} rows",
                    keys.len(),
                    rows.len()
                )));
            }
        }
        Ok(FeatureTable { column_names, rows, labels, row_keys })
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.column_names.len()
    }

    pub fn column_names(&self) -> &[String] {
        &self.column_names
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.rows[i]
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn row_keys(&self) -> Option<&[RowKey]> {
        self.row_keys.as_deref()
    }

    /// `(benign, insider)` row counts.
    pub fn class_counts(&self) -> (usize, usize) {
        let pos = self.labels.iter().filter(|l| **l == 1).count();
        (self.labels.len() - pos, pos)
    }

    /// True if any cell is NaN (only possible for tables built with
    /// [`FeatureTable::with_missing`]).
    pub fn has_missing(&self) -> bool {
        self.rows.iter().any(|r| r.iter().any(|v| v.is_nan()))
    }

    /// New table containing the given rows, in the given order. Indices must
    /// be in bounds.
    pub fn select_rows(&self, indices: &[usize]) -> FeatureTable {
        FeatureTable {
            column_names: self.column_names.clone(),
            rows: indices.iter().map(|&i| self.rows[i].clone()).collect(),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
            row_keys: self
                .row_keys
                .as_ref()
                .map(|keys| indices.iter().map(|&i| keys[i].clone()).collect()),
        }
    }

    /// Values of one column, in row order.
    pub fn column(&self, j: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r[j]).collect()
    }
}

/// How a cell is rendered in the canonical CSV: counts stay integers, other
/// values use the shortest decimal that round-trips, missing cells are empty.
fn format_cell(v: f64) -> String {
    if v.is_nan() {
        String::new()
    } else if v.fract() == 0.0 && v.abs() < 9.0e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

/// Writes a table in canonical CSV form (`user,day,<feature...>,insider`).
///
/// The table must carry row keys; a table that has lost its keys has no
/// canonical identity column to write.
pub fn write_feature_csv<W: io::Write>(table: &FeatureTable, writer: W) -> Result<()> {
    let keys = table.row_keys().ok_or_else(|| {
        Error::Schema("table has no (user, day) keys; cannot write canonical CSV".into())
    })?;
    let mut w = csv::Writer::from_writer(writer);
    let mut header = vec!["user".to_string(), "day".to_string()];
    header.extend(table.column_names().iter().cloned());
    header.push("insider".to_string());
    w.write_record(&header).map_err(csv_error)?;
    for (i, row) in table.rows().iter().enumerate() {
        let mut record = vec![keys[i].user.clone(), keys[i].day.format("%Y-%m-%d").to_string()];
        record.extend(row.iter().map(|v| format_cell(*v)));
        record.push(table.labels()[i].to_string());
        w.write_record(&record).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

/// Convenience wrapper writing canonical CSV to a file path.
pub fn write_feature_csv_path(table: &FeatureTable, path: impl AsRef<Path>) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_feature_csv(table, io::BufWriter::new(file))
}

/// Reads a table from canonical CSV.
///
/// Empty feature cells become NaN so the cleaning audit can count and drop
/// them; any other malformed cell is a schema error naming the line.
pub fn read_feature_csv<R: io::Read>(reader: R) -> Result<FeatureTable> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    let headers = r.headers().map_err(csv_error)?.clone();
    let cols: Vec<&str> = headers.iter().collect();
    if cols.len() < 3 || cols[0] != "user" || cols[1] != "day" || cols[cols.len() - 1] != "insider"
    {
        return Err(Error::Schema(format!(
            "canonical CSV header must be user,day,<feature...>,insider; got {:?}",
            cols.join(",")
        )));
    }
    let feature_names: Vec<String> =
        cols[2..cols.len() - 1].iter().map(|s| s.to_string()).collect();

    let mut rows = Vec::new();
    let mut labels = Vec::new();
    let mut keys = Vec::new();
    for record in r.records() {
        let record = record.map_err(csv_error)?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        if record.len() != cols.len() {
            return Err(Error::Schema(format!(
                "line {line}: expected {} fields, found {}",
                cols.len(),
                record.len()
            )));
        }
        let user = record[0].to_string();
        if user.is_empty() {
            return Err(Error::Schema(format!("line {line}: empty user id")));
        }
        let day = NaiveDate::parse_from_str(&record[1], "%Y-%m-%d").map_err(|_| {
            Error::Schema(format!("line {line}: day {:?} is not YYYY-MM-DD", &record[1]))
        })?;
        let mut row = Vec::with_capacity(feature_names.len());
        for (j, cell) in record.iter().take(cols.len() - 1).skip(2).enumerate() {
            if cell.is_empty() {
                row.push(f64::NAN);
                continue;
            }
            let v: f64 = cell.parse().map_err(|_| {
                Error::Schema(format!(
                    "line {line}: column {:?} value {cell:?} is not numeric",
                    feature_names[j]
                ))
            })?;
            if v.is_infinite() {
                return Err(Error::Schema(format!(
                    "line {line}: column {:?} value is infinite",
                    feature_names[j]
                )));
            }
            row.push(v);
        }
        let label = match &record[cols.len() - 1] {
            "0" => 0u8,
            "1" => 1u8,
            other => {
                return Err(Error::Schema(format!(
                    "line {line}: insider label {other:?} must be 0 or 1"
                )))
            }
        };
        keys.push(RowKey::new(user, day));
        rows.push(row);
        labels.push(label);
    }
    FeatureTable::with_missing(feature_names, rows, labels, Some(keys))
}

/// Convenience wrapper reading canonical CSV from a file path.
pub fn read_feature_csv_path(path: impl AsRef<Path>) -> Result<FeatureTable> {
    let path = path.as_ref();
    let file = std::fs::File::open(path)?;
    read_feature_csv(io::BufReader::new(file))
}

pub(crate) fn csv_error(e: csv::Error) -> Error {
    if e.is_io_error() {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => Error::Io(io),
            _ => unreachable!("is_io_error guarantees an Io kind"),
        }
    } else {
        Error::Schema(e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn day(s: &str) -> NaiveDate {
        NaiveDate::parse_from_str(s, "%Y-%m-%d").unwrap()
    }

    fn sample_table() -> FeatureTable {
        FeatureTable::new(
            vec!["a".into(), "b".into()],
            vec![vec![1.0, 2.5], vec![3.0, 4.0]],
            vec![0, 1],
            Some(vec![RowKey::new("u1", day("2010-01-04")), RowKey::new("u2", day("2010-01-05"))]),
        )
        .unwrap()
    }

    #[test]
    fn constructor_validates_shapes_and_values() {
        let err = FeatureTable::new(vec!["a".into()], vec![vec![1.0, 2.0]], vec![0], None);
        assert!(matches!(err, Err(Error::Shape(_))));

        let err = FeatureTable::new(vec!["a".into()], vec![vec![f64::NAN]], vec![0], None);
        assert!(matches!(err, Err(Error::Parameter(_))));

        let err = FeatureTable::new(vec!["a".into()], vec![vec![1.0]], vec![2], None);
        assert!(matches!(err, Err(Error::Parameter(_))));

        let err =
            FeatureTable::new(vec!["a".into(), "a".into()], vec![vec![1.0, 2.0]], vec![0], None);
        assert!(matches!(err, Err(Error::Schema(_))));

        // NaN is representable only through the missing-aware constructor.
        let t = FeatureTable::with_missing(vec!["a".into()], vec![vec![f64::NAN]], vec![0], None)
            .unwrap();
        assert!(t.has_missing());
        // Infinity is rejected even there.
        let err =
            FeatureTable::with_missing(vec!["a".into()], vec![vec![f64::INFINITY]], vec![0], None);
        assert!(matches!(err, Err(Error::Parameter(_))));
    }

    #[test]
    fn class_counts_and_selection() {
        let t = sample_table();
        assert_eq!(t.class_counts(), (1, 1));
        let picked = t.select_rows(&[1]);
        assert_eq!(picked.n_rows(), 1);
        assert_eq!(picked.row(0), &[3.0, 4.0]);
        assert_eq!(picked.labels(), &[1]);
        assert_eq!(picked.row_keys().unwrap()[0].user, "u2");
    }

    #[test]
    fn csv_round_trip_preserves_everything() {
        let t = sample_table();
        let mut buf = Vec::new();
        write_feature_csv(&t, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("user,day,a,b,insider\n"));
        assert!(text.contains("u1,2010-01-04,1,2.5,0"));
        let back = read_feature_csv(&buf[..]).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn csv_reader_rejects_malformed_input() {
        let bad_header = "who,day,a,insider\nu,2010-01-04,1,0\n";
        assert!(matches!(read_feature_csv(bad_header.as_bytes()), Err(Error::Schema(_))));

        let bad_day = "user,day,a,insider\nu,Jan-4,1,0\n";
        let err = read_feature_csv(bad_day.as_bytes()).unwrap_err();
        assert!(err.to_string().contains("line 2"), "got: {err}");

        let bad_label = "user,day,a,insider\nu,2010-01-04,1,yes\n";
        assert!(matches!(read_feature_csv(bad_label.as_bytes()), Err(Error::Schema(_))));

        let bad_value = "user,day,a,insider\nu,2010-01-04,abc,0\n";
        let err = read_feature_csv(bad_value.as_bytes()).unwrap_err();
        assert!(err.to_string().contains("\"a\""), "got: {err}");
    }

    #[test]
    fn empty_cells_become_missing_values() {
        let csv = "user,day,a,b,insider\nu,2010-01-04,,7,1\n";
        let t = read_feature_csv(csv.as_bytes()).unwrap();
        assert!(t.row(0)[0].is_nan());
        assert_eq!(t.row(0)[1], 7.0);
        assert!(t.has_missing());
    }

    #[test]
    fn zero_row_table_round_trips() {
        let t = FeatureTable::new(vec!["a".into()], vec![], vec![], Some(vec![])).unwrap();
        let mut buf = Vec::new();
        write_feature_csv(&t, &mut buf).unwrap();
        let back = read_feature_csv(&buf[..]).unwrap();
        assert_eq!(back.n_rows(), 0);
        assert_eq!(back.column_names(), t.column_names());
    }

    #[test]
    fn keyless_table_cannot_be_written_canonically() {
        let t = FeatureTable::new(vec!["a".into()], vec![vec![1.0]], vec![0], None).unwrap();
        let mut buf = Vec::new();
        assert!(matches!(write_feature_csv(&t, &mut buf), Err(Error::Schema(_))));
    }
}
