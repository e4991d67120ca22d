//! Data preparation: cleaning audit, min-max normalisation, SMOTE
//! oversampling, stratified splitting, and the two end-to-end pipeline
//! orders.
//!
//! Two stage orders are provided. `FullTableFit` ("paper" on the command
//! line) reproduces the ordering many studies report — oversample and fit
//! every transform on the whole table, then split — which leaks synthetic
//! and scaling information into the held-out half. `LeakageSafe` ("safe")
//! splits first and fits everything on the training half only; it is the
//! recommended default for honest estimates.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::numerics::{fit_pca, ComponentSelector, PcaModel};
use crate::table::{FeatureTable, RowKey};

// ---------------------------------------------------------------------------
// Cleaning audit
// ---------------------------------------------------------------------------

/// Whether the audit mutates the table or only reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CleanPolicy {
    /// Count problems; return the table untouched.
    ReportOnly,
    /// Remove every offending row and record each removal.
    DropRows,
}

/// Why a row was removed (first applicable reason wins).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CleanAction {
    DroppedMissing,
    DroppedInconsistent,
    DroppedDuplicate,
    DroppedOutlier,
}

impl CleanAction {
    pub fn as_str(&self) -> &'static str {
        match self {
            CleanAction::DroppedMissing => "missing",
            CleanAction::DroppedInconsistent => "inconsistent",
            CleanAction::DroppedDuplicate => "duplicate",
            CleanAction::DroppedOutlier => "outlier",
        }
    }
}

/// What the audit found, and what it did about it.
#[derive(Debug, Clone, PartialEq)]
pub struct CleanReport {
    /// NaN cells (empty cells in the canonical CSV).
    pub n_missing_cells: usize,
    /// Rows whose feature values and label exactly repeat an earlier row.
    pub n_duplicate_rows: usize,
    /// Cells whose per-column z-score magnitude exceeds the threshold.
    pub n_outlier_cells: usize,
    /// Rows violating format consistency: a repeated (user, day) key, or a
    /// negative / non-integer value in a `num_`-prefixed count column.
    pub n_inconsistent_rows: usize,
    /// `(original_row_index, reason)` for every removed row; empty under
    /// [`CleanPolicy::ReportOnly`].
    pub actions_taken: Vec<(usize, CleanAction)>,
    pub rows_in: usize,
    pub rows_out: usize,
}

impl CleanReport {
    pub fn is_clean(&self) -> bool {
        self.n_missing_cells == 0
            && self.n_duplicate_rows == 0
            && self.n_outlier_cells == 0
            && self.n_inconsistent_rows == 0
    }

    /// One `key=value` line per field, for machine-readable reports.
    pub fn machine_record(&self) -> String {
        format!(
            "missing_cells={}\nduplicate_rows={}\noutlier_cells={}\ninconsistent_rows={}\n\
             rows_in={}\nrows_out={}\nactions={}",
            self.n_missing_cells,
            self.n_duplicate_rows,
            self.n_outlier_cells,
            self.n_inconsistent_rows,
            self.rows_in,
            self.rows_out,
            self.actions_taken.len()
        )
    }
}

impl std::fmt::Display for CleanReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "cleaning audit: {} rows in, {} rows out", self.rows_in, self.rows_out)?;
        writeln!(f, "  missing cells:     {}", self.n_missing_cells)?;
        writeln!(f, "  duplicate rows:    {}", self.n_duplicate_rows)?;
        writeln!(f, "  outlier cells:     {}", self.n_outlier_cells)?;
        writeln!(f, "  inconsistent rows: {}", self.n_inconsistent_rows)?;
        write!(f, "  rows removed:      {}", self.actions_taken.len())
    }
}

/// Audits a table for missing cells, exact duplicates, extreme cells
/// (|z| > `z_threshold` per column) and format-inconsistent rows.
///
/// Under [`CleanPolicy::ReportOnly`] the returned table is the input,
/// unchanged. Under [`CleanPolicy::DropRows`] every offending row is removed
/// (first occurrence of a duplicate survives) and each removal is recorded
/// with the first applicable reason in the order missing > inconsistent >
/// duplicate > outlier.
pub fn audit_clean(
    table: &FeatureTable,
    z_threshold: f64,
    policy: CleanPolicy,
) -> Result<(FeatureTable, CleanReport)> {
    if !(z_threshold.is_finite() && z_threshold > 0.0) {
        return Err(Error::Parameter(format!(
            "outlier z-score threshold must be positive and finite, got {z_threshold}"
        )));
    }
    let n = table.n_rows();
    let d = table.n_cols();

    // Column statistics over finite cells only.
    let mut col_mean = vec![0.0; d];
    let mut col_std = vec![0.0; d];
    for j in 0..d {
        let finite: Vec<f64> =
            table.rows().iter().map(|r| r[j]).filter(|v| v.is_finite()).collect();
        if finite.is_empty() {
            continue;
        }
        let mean = finite.iter().sum::<f64>() / finite.len() as f64;
        let var = finite.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
            / finite.len() as f64;
        col_mean[j] = mean;
        col_std[j] = var.sqrt();
    }

    let count_cols: Vec<usize> = table
        .column_names()
        .iter()
        .enumerate()
        .filter(|(_, name)| name.starts_with("num_"))
        .map(|(j, _)| j)
        .collect();

    let mut missing_rows = vec![false; n];
    let mut inconsistent_rows = vec![false; n];
    let mut duplicate_rows = vec![false; n];
    let mut outlier_rows = vec![false; n];
    let mut n_missing_cells = 0;
    let mut n_outlier_cells = 0;

    let mut seen_rows: HashMap<(Vec<u64>, u8), usize> = HashMap::new();
    let mut seen_keys: HashMap<&RowKey, usize> = HashMap::new();

    for (i, row) in table.rows().iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if v.is_nan() {
                n_missing_cells += 1;
                missing_rows[i] = true;
            } else if col_std[j] > 0.0 && ((v - col_mean[j]) / col_std[j]).abs() > z_threshold {
                n_outlier_cells += 1;
                outlier_rows[i] = true;
            }
        }
        for &j in &count_cols {
            let v = row[j];
            if v.is_finite() && (v < 0.0 || v.fract() != 0.0) {
                inconsistent_rows[i] = true;
            }
        }
        if let Some(keys) = table.row_keys() {
            if seen_keys.insert(&keys[i], i).is_some() {
                inconsistent_rows[i] = true;
            }
        }
        let fingerprint: Vec<u64> = row.iter().map(|v| v.to_bits()).collect();
        if seen_rows.insert((fingerprint, table.labels()[i]), i).is_some() {
            duplicate_rows[i] = true;
        }
    }

    let mut report = CleanReport {
        n_missing_cells,
        n_duplicate_rows: duplicate_rows.iter().filter(|b| **b).count(),
        n_outlier_cells,
        n_inconsistent_rows: inconsistent_rows.iter().filter(|b| **b).count(),
        actions_taken: Vec::new(),
        rows_in: n,
        rows_out: n,
    };

    match policy {
        CleanPolicy::ReportOnly => Ok((table.clone(), report)),
        CleanPolicy::DropRows => {
            let mut keep = Vec::with_capacity(n);
            for i in 0..n {
                let action = if missing_rows[i] {
                    Some(CleanAction::DroppedMissing)
                } else if inconsistent_rows[i] {
                    Some(CleanAction::DroppedInconsistent)
                } else if duplicate_rows[i] {
                    Some(CleanAction::DroppedDuplicate)
                } else if outlier_rows[i] {
                    Some(CleanAction::DroppedOutlier)
                } else {
                    None
                };
                match action {
                    Some(a) => report.actions_taken.push((i, a)),
                    None => keep.push(i),
                }
            }
            report.rows_out = keep.len();
            Ok((table.select_rows(&keep), report))
        }
    }
}

// ---------------------------------------------------------------------------
// Min-max normalisation
// ---------------------------------------------------------------------------

/// Per-column `(min, max)` ranges fitted on one table.
#[derive(Debug, Clone, PartialEq)]
pub struct NormParams {
    pub ranges: Vec<(f64, f64)>,
}

impl NormParams {
    pub fn n_cols(&self) -> usize {
        self.ranges.len()
    }

    /// Normalises a single row; see [`apply_normalizer`] for the rules.
    pub fn apply_row(&self, row: &[f64]) -> Result<Vec<f64>> {
        if row.len() != self.n_cols() {
            return Err(Error::Shape(format!(
                "normaliser fitted on {} columns applied to a row with {}",
                self.n_cols(),
                row.len()
            )));
        }
        Ok(row
            .iter()
            .zip(&self.ranges)
            .map(|(v, (min, max))| if max > min { (v - min) / (max - min) } else { 0.0 })
            .collect())
    }
}

/// Records each column's observed min and max. The table must be non-empty
/// and fully finite (clean missing cells first).
pub fn fit_normalizer(table: &FeatureTable) -> Result<NormParams> {
    if table.n_rows() == 0 {
        return Err(Error::Parameter("cannot fit a normaliser on an empty table".into()));
    }
    if table.has_missing() {
        return Err(Error::Parameter(
            "table contains missing cells; run the cleaning audit with row dropping first".into(),
        ));
    }
    let ranges = (0..table.n_cols())
        .map(|j| {
            let mut min = f64::INFINITY;
            let mut max = f64::NEG_INFINITY;
            for row in table.rows() {
                min = min.min(row[j]);
                max = max.max(row[j]);
            }
            (min, max)
        })
        .collect();
    Ok(NormParams { ranges })
}

/// Applies `x -> (x - min) / (max - min)` per column. A degenerate column
/// (min == max) maps to 0.0; values outside the fitted range are NOT
/// clipped, so out-of-range inputs land outside [0, 1] by design.
pub fn apply_normalizer(params: &NormParams, table: &FeatureTable) -> Result<FeatureTable> {
    if params.n_cols() != table.n_cols() {
        return Err(Error::Shape(format!(
            "normaliser fitted on {} columns applied to a table with {}",
            params.n_cols(),
            table.n_cols()
        )));
    }
    let rows = table
        .rows()
        .iter()
        .map(|row| params.apply_row(row))
        .collect::<Result<Vec<_>>>()?;
    FeatureTable::new(
        table.column_names().to_vec(),
        rows,
        table.labels().to_vec(),
        table.row_keys().map(|k| k.to_vec()),
    )
}

// ---------------------------------------------------------------------------
// SMOTE
// ---------------------------------------------------------------------------

/// SMOTE settings.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoteConfig {
    /// Number of nearest minority neighbours to interpolate toward.
    pub k_neighbors: usize,
    /// Desired minority size as a fraction of the majority size (1.0 =
    /// fully balanced). Existing rows are never removed.
    pub target_ratio: f64,
    pub seed: u64,
}

impl Default for SmoteConfig {
    fn default() -> Self {
        SmoteConfig { k_neighbors: 3, target_ratio: 1.0, seed: 0 }
    }
}

/// Provenance of one synthetic row: `synthetic = base + u * (neighbor -
/// base)`, indices into the input table.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoteRecord {
    pub base_index: usize,
    pub neighbor_index: usize,
    pub interpolation: f64,
}

/// SMOTE output: the augmented table plus one provenance record per
/// synthetic row, in append order.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoteOutcome {
    pub table: FeatureTable,
    pub provenance: Vec<SmoteRecord>,
}

/// Oversamples the minority class with SMOTE: each synthetic row
/// interpolates between a minority row and one of its `k` nearest minority
/// neighbours (Euclidean distance over all feature columns) at a uniform
/// random fraction. Base rows are visited round-robin; all randomness comes
/// from the seed. On a class tie, label 1 is treated as the minority.
pub fn smote_balance(table: &FeatureTable, config: &SmoteConfig) -> Result<SmoteOutcome> {
    if config.k_neighbors == 0 {
        return Err(Error::Parameter("SMOTE needs at least one neighbour".into()));
    }
    if !(config.target_ratio.is_finite() && config.target_ratio > 0.0) {
        return Err(Error::Parameter(format!(
            "SMOTE target ratio must be positive and finite, got {}",
            config.target_ratio
        )));
    }
    if table.has_missing() {
        return Err(Error::Parameter(
            "table contains missing cells; run the cleaning audit with row dropping first".into(),
        ));
    }
    let (n_neg, n_pos) = table.class_counts();
    if n_neg == 0 || n_pos == 0 {
        return Err(Error::Class(format!(
            "SMOTE needs both classes; got {n_neg} benign and {n_pos} insider rows"
        )));
    }
    let minority_label: u8 = if n_pos <= n_neg { 1 } else { 0 };
    let (minority_count, majority_count) =
        if minority_label == 1 { (n_pos, n_neg) } else { (n_neg, n_pos) };
    if minority_count <= config.k_neighbors {
        return Err(Error::Parameter(format!(
            "SMOTE with k={} needs more than {} minority rows, got {minority_count}",
            config.k_neighbors, config.k_neighbors
        )));
    }

    let minority_indices: Vec<usize> = table
        .labels()
        .iter()
        .enumerate()
        .filter(|(_, l)| **l == minority_label)
        .map(|(i, _)| i)
        .collect();

    let target = round_half_up(config.target_ratio * majority_count as f64);
    let n_synthetic = target.saturating_sub(minority_count);

    // k nearest minority neighbours per minority row (ties resolved toward
    // the lower row index).
    let mut neighbors: Vec<Vec<usize>> = Vec::with_capacity(minority_indices.len());
    for &i in &minority_indices {
        let mut dists: Vec<(f64, usize)> = minority_indices
            .iter()
            .filter(|&&j| j != i)
            .map(|&j| {
                let d2: f64 = table
                    .row(i)
                    .iter()
                    .zip(table.row(j))
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum();
                (d2, j)
            })
            .collect();
        dists.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        neighbors.push(dists.iter().take(config.k_neighbors).map(|(_, j)| *j).collect());
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut rows = table.rows().to_vec();
    let mut labels = table.labels().to_vec();
    let mut keys = table.row_keys().map(|k| k.to_vec());
    let mut provenance = Vec::with_capacity(n_synthetic);
    for s in 0..n_synthetic {
        let m = s % minority_indices.len();
        let base_index = minority_indices[m];
        let neighbor_index = neighbors[m][rng.gen_range(0..config.k_neighbors)];
        let u: f64 = rng.gen();
        let base = table.row(base_index);
        let nn = table.row(neighbor_index);
        let synthetic: Vec<f64> =
            base.iter().zip(nn).map(|(x, xn)| x + u * (xn - x)).collect();
        rows.push(synthetic);
        labels.push(minority_label);
        if let Some(keys) = keys.as_mut() {
            let base_key = &table.row_keys().unwrap()[base_index];
            keys.push(RowKey::new(format!("{}#s{s}", base_key.user), base_key.day));
        }
        provenance.push(SmoteRecord { base_index, neighbor_index, interpolation: u });
    }

    let out = FeatureTable::new(table.column_names().to_vec(), rows, labels, keys)?;
    Ok(SmoteOutcome { table: out, provenance })
}

// ---------------------------------------------------------------------------
// Stratified split
// ---------------------------------------------------------------------------

fn round_half_up(x: f64) -> usize {
    (x + 0.5).floor() as usize
}

/// Index form of the stratified split: `(train_indices, test_indices)`,
/// each ascending. Within each class the rows are shuffled by the seed and
/// the first `round_half_up(train_fraction * class_size)` go to train; one
/// boundary row moves between halves if needed so the overall train size is
/// exactly `round_half_up(train_fraction * n)`.
pub fn stratified_split_indices(
    labels: &[u8],
    train_fraction: f64,
    seed: u64,
) -> Result<(Vec<usize>, Vec<usize>)> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(Error::Parameter(format!(
            "train fraction must lie strictly between 0 and 1, got {train_fraction}"
        )));
    }
    let mut by_class: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    for (i, l) in labels.iter().enumerate() {
        if *l > 1 {
            return Err(Error::Parameter("labels must be 0/1".into()));
        }
        by_class[*l as usize].push(i);
    }
    for (label, idx) in by_class.iter().enumerate() {
        if idx.len() < 2 {
            return Err(Error::Class(format!(
                "stratified split needs at least 2 rows per class; class {label} has {}",
                idx.len()
            )));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    by_class[0].shuffle(&mut rng);
    by_class[1].shuffle(&mut rng);

    let mut take: [usize; 2] = [0, 0];
    for c in 0..2 {
        take[c] = round_half_up(train_fraction * by_class[c].len() as f64);
    }
    let total_target = round_half_up(train_fraction * labels.len() as f64);
    let diff = (take[0] + take[1]) as i64 - total_target as i64;
    if diff != 0 {
        // Move one boundary row in the class whose rounding deviated the
        // most in the offending direction (ties toward class 0); this keeps
        // every class within one row of its exact share.
        let dev = |c: usize| take[c] as f64 - train_fraction * by_class[c].len() as f64;
        if diff > 0 {
            let c = if dev(0) >= dev(1) { 0 } else { 1 };
            take[c] -= 1;
        } else {
            let c = if dev(0) <= dev(1) { 0 } else { 1 };
            take[c] += 1;
        }
    }

    let mut train = Vec::with_capacity(take[0] + take[1]);
    let mut test = Vec::with_capacity(labels.len() - take[0] - take[1]);
    for c in 0..2 {
        train.extend_from_slice(&by_class[c][..take[c]]);
        test.extend_from_slice(&by_class[c][take[c]..]);
    }
    train.sort_unstable();
    test.sort_unstable();
    Ok((train, test))
}

/// Stratified 2-way split of a table; see [`stratified_split_indices`].
pub fn stratified_split(
    table: &FeatureTable,
    train_fraction: f64,
    seed: u64,
) -> Result<(FeatureTable, FeatureTable)> {
    let (train_idx, test_idx) = stratified_split_indices(table.labels(), train_fraction, seed)?;
    Ok((table.select_rows(&train_idx), table.select_rows(&test_idx)))
}

// ---------------------------------------------------------------------------
// Pipeline assembly
// ---------------------------------------------------------------------------

/// Stage ordering for the preparation pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PipelineMode {
    /// clean -> SMOTE -> normalise -> PCA -> split, everything fitted on
    /// the full table. Reproduces the ordering widely reported in print;
    /// overlap between synthetic rows and the held-out half makes its
    /// metrics optimistic.
    FullTableFit,
    /// clean -> split -> normalise -> SMOTE -> PCA on the training half
    /// only, then transform the held-out half with the fitted parameters.
    LeakageSafe,
}

impl PipelineMode {
    /// Command-line spelling: `paper` or `safe`.
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "paper" => Ok(PipelineMode::FullTableFit),
            "safe" => Ok(PipelineMode::LeakageSafe),
            other => Err(Error::Parameter(format!(
                "unknown pipeline mode {other:?}; expected `paper` or `safe`"
            ))),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            PipelineMode::FullTableFit => "paper",
            PipelineMode::LeakageSafe => "safe",
        }
    }

    /// The stage order actually executed, for reports.
    pub fn stage_order(&self) -> &'static [&'static str] {
        match self {
            PipelineMode::FullTableFit => &["clean", "smote", "normalize", "pca", "split"],
            PipelineMode::LeakageSafe => {
                &["clean", "split", "normalize", "smote", "pca", "transform-test"]
            }
        }
    }
}

/// Everything the pipeline needs to run.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub mode: PipelineMode,
    pub smote: SmoteConfig,
    pub pca: ComponentSelector,
    pub train_fraction: f64,
    pub split_seed: u64,
    pub z_threshold: f64,
    pub clean_policy: CleanPolicy,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            mode: PipelineMode::LeakageSafe,
            smote: SmoteConfig::default(),
            pca: ComponentSelector::VarianceFraction(0.95),
            train_fraction: 0.8,
            split_seed: 0,
            z_threshold: 6.0,
            clean_policy: CleanPolicy::ReportOnly,
        }
    }
}

/// Output of the preparation pipeline.
#[derive(Debug, Clone, PartialEq)]
pub struct PreparedData {
    /// Training rows in principal-component space (columns `pc1..pck`).
    pub train: FeatureTable,
    /// Held-out rows in the same space.
    pub test: FeatureTable,
    /// The held-out rows in the original feature space (before
    /// normalisation and projection), for persistence and later scoring.
    pub test_raw: FeatureTable,
    pub norm: NormParams,
    pub pca: PcaModel,
    pub clean: CleanReport,
    /// Provenance for every synthetic row SMOTE added (indices refer to the
    /// table SMOTE ran on: the cleaned table in `paper` mode, the
    /// normalised training half in `safe` mode).
    pub smote_provenance: Vec<SmoteRecord>,
    /// The stage order that was executed.
    pub stages: &'static [&'static str],
}

fn projected_table(
    pca: &PcaModel,
    source: &FeatureTable,
) -> Result<FeatureTable> {
    let projected = pca.project(source.rows())?;
    let names = (1..=pca.n_components()).map(|i| format!("pc{i}")).collect();
    FeatureTable::new(
        names,
        projected,
        source.labels().to_vec(),
        source.row_keys().map(|k| k.to_vec()),
    )
}

/// Runs the full preparation pipeline in the configured order. See
/// [`PipelineMode`] for the two stage orders.
pub fn run_pipeline(table: &FeatureTable, config: &PipelineConfig) -> Result<PreparedData> {
    let (cleaned, clean_report) = audit_clean(table, config.z_threshold, config.clean_policy)?;
    match config.mode {
        PipelineMode::FullTableFit => {
            let smote = smote_balance(&cleaned, &config.smote)?;
            let norm = fit_normalizer(&smote.table)?;
            let normalized = apply_normalizer(&norm, &smote.table)?;
            let pca = fit_pca(normalized.rows(), config.pca)?;
            let projected = projected_table(&pca, &normalized)?;
            let (train_idx, test_idx) = stratified_split_indices(
                projected.labels(),
                config.train_fraction,
                config.split_seed,
            )?;
            Ok(PreparedData {
                train: projected.select_rows(&train_idx),
                test: projected.select_rows(&test_idx),
                test_raw: smote.table.select_rows(&test_idx),
                norm,
                pca,
                clean: clean_report,
                smote_provenance: smote.provenance,
                stages: config.mode.stage_order(),
            })
        }
        PipelineMode::LeakageSafe => {
            let (train_idx, test_idx) = stratified_split_indices(
                cleaned.labels(),
                config.train_fraction,
                config.split_seed,
            )?;
            let train_raw = cleaned.select_rows(&train_idx);
            let test_raw = cleaned.select_rows(&test_idx);
            let norm = fit_normalizer(&train_raw)?;
            let train_norm = apply_normalizer(&norm, &train_raw)?;
            let smote = smote_balance(&train_norm, &config.smote)?;
            let pca = fit_pca(smote.table.rows(), config.pca)?;
            let train = projected_table(&pca, &smote.table)?;
            let test_norm = apply_normalizer(&norm, &test_raw)?;
            let test = projected_table(&pca, &test_norm)?;
            Ok(PreparedData {
                train,
                test,
                test_raw,
                norm,
                pca,
                clean: clean_report,
                smote_provenance: smote.provenance,
                stages: config.mode.stage_order(),
            })
        }
    }
}
