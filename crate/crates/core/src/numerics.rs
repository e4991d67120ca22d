//! Dense symmetric-matrix linear algebra for PCA: covariance construction,
//! a cyclic Jacobi eigensolver, and principal-component fitting/projection.
//!
//! Everything here is written for desk-scale feature tables (tens of
//! columns), favouring predictable numerics over asymptotic cleverness.

use crate::error::{Error, Result};

/// Dense symmetric matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    order: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    /// Validates symmetry (|a_ij - a_ji| <= 1e-12 * max(1, |a_ij|)) and
    /// finiteness.
    pub fn new(order: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != order * order {
            return Err(Error::Shape(format!(
                "symmetric matrix of order {order} needs {} entries, got {}",
                order * order,
                data.len()
            )));
        }
        for (i, v) in data.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::Parameter(format!(
                    "non-finite matrix entry {v} at flat index {i}"
                )));
            }
        }
        for i in 0..order {
            for j in (i + 1)..order {
                let a = data[i * order + j];
                let b = data[j * order + i];
                if (a - b).abs() > 1e-12 * a.abs().max(1.0) {
                    return Err(Error::Parameter(format!(
                        "matrix is not symmetric at ({i}, {j}): {a} vs {b}"
                    )));
                }
            }
        }
        Ok(SymMatrix { order, data })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.order + j]
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.order {
            return Err(Error::Shape(format!(
                "vector of length {} against matrix of order {}",
                v.len(),
                self.order
            )));
        }
        Ok((0..self.order)
            .map(|i| (0..self.order).map(|j| self.get(i, j) * v[j]).sum())
            .collect())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    fn to_dense(&self) -> Vec<Vec<f64>> {
        (0..self.order)
            .map(|i| self.data[i * self.order..(i + 1) * self.order].to_vec())
            .collect()
    }
}

fn check_rectangular(rows: &[Vec<f64>]) -> Result<usize> {
    let d = rows.first().map(|r| r.len()).unwrap_or(0);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != d {
            return Err(Error::Shape(format!(
                "row {i} has {} values, expected {d}",
                row.len()
            )));
        }
        for v in row {
            if !v.is_finite() {
                return Err(Error::Parameter(format!("non-finite value {v} in row {i}")));
            }
        }
    }
    Ok(d)
}

fn column_means(rows: &[Vec<f64>], d: usize) -> Vec<f64> {
    let mut means = vec![0.0; d];
    for row in rows {
        for (m, v) in means.iter_mut().zip(row) {
            *m += v;
        }
    }
    let n = rows.len() as f64;
    for m in &mut means {
        *m /= n;
    }
    means
}

/// Covariance of the rows: columns are mean-centred, then
/// `cov = (1/m) * sum_i x_i x_i^T` with `m = n` (the population convention,
/// dividing by the row count rather than `n - 1`).
pub fn covariance(rows: &[Vec<f64>]) -> Result<SymMatrix> {
    if rows.len() < 2 {
        return Err(Error::Parameter(format!(
            "covariance needs at least 2 rows, got {}",
            rows.len()
        )));
    }
    let d = check_rectangular(rows)?;
    let means = column_means(rows, d);
    let mut data = vec![0.0; d * d];
    for row in rows {
        for i in 0..d {
            let ci = row[i] - means[i];
            for j in i..d {
                data[i * d + j] += ci * (row[j] - means[j]);
            }
        }
    }
    let m = rows.len() as f64;
    for i in 0..d {
        for j in i..d {
            data[i * d + j] /= m;
            data[j * d + i] = data[i * d + j]; // mirror: exactly symmetric
        }
    }
    SymMatrix::new(d, data)
}

/// Full eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Returns `(eigenvalues, eigenvectors)` sorted by eigenvalue in
/// nonincreasing order; `eigenvectors[i]` is the unit-norm eigenvector for
/// `eigenvalues[i]`, with its sign fixed so the largest-magnitude entry is
/// positive (ties resolved toward the lowest index). Fails with a numerical
/// error naming the residual off-diagonal norm if `max_sweeps` passes do not
/// reach `tol` (relative to the Frobenius norm of the input).
#[allow(clippy::needless_range_loop)] // rotations touch (i, p) and (p, i) pairs
pub fn sym_eigen(
    matrix: &SymMatrix,
    tol: f64,
    max_sweeps: usize,
) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Parameter(format!("tolerance must be positive, got {tol}")));
    }
    let d = matrix.order();
    if d == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    let mut a = matrix.to_dense();
    // v[r][c]: column c accumulates the eigenvector for diagonal slot c.
    let mut v = vec![vec![0.0; d]; d];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    let threshold = tol * matrix.frobenius_norm().max(1.0);
    let off_norm = |a: &Vec<Vec<f64>>| -> f64 {
        let mut s = 0.0;
        for i in 0..d {
            for j in (i + 1)..d {
                s += 2.0 * a[i][j] * a[i][j];
            }
        }
        s.sqrt()
    };

    let mut converged = off_norm(&a) <= threshold;
    for _sweep in 0..max_sweeps {
        if converged {
            break;
        }
        for p in 0..d {
            for q in (p + 1)..d {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                // Rotation that zeroes a[p][q] (Rutishauser's stable form).
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                let delta = t * apq;
                a[p][p] -= delta;
                a[q][q] += delta;
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for i in 0..d {
                    if i == p || i == q {
                        continue;
                    }
                    let g = a[i][p];
                    let h = a[i][q];
                    a[i][p] = g - s * (h + g * tau);
                    a[p][i] = a[i][p];
                    a[i][q] = h + s * (g - h * tau);
                    a[q][i] = a[i][q];
                }
                for row in v.iter_mut() {
                    let g = row[p];
                    let h = row[q];
                    row[p] = g - s * (h + g * tau);
                    row[q] = h + s * (g - h * tau);
                }
            }
        }
        converged = off_norm(&a) <= threshold;
    }
    if !converged {
        return Err(Error::Numerical(format!(
            "jacobi eigensolver did not converge within {max_sweeps} sweeps; \
             off-diagonal norm {:.3e} above threshold {:.3e}",
            off_norm(&a),
            threshold
        )));
    }

    let mut order: Vec<usize> = (0..d).collect();
    // Stable sort: equal eigenvalues keep their diagonal order.
    order.sort_by(|&i, &j| a[j][j].total_cmp(&a[i][i]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[i][i]).collect();
    let eigenvectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&col| {
            let mut vec: Vec<f64> = (0..d).map(|r| v[r][col]).collect();
            fix_sign(&mut vec);
            vec
        })
        .collect();
    Ok((eigenvalues, eigenvectors))
}

/// Sign convention: the entry with the largest magnitude (lowest index on
/// ties) is made positive.
fn fix_sign(v: &mut [f64]) {
    let mut best = 0;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > v[best].abs() {
            best = i;
        }
    }
    if v[best] < 0.0 {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
}

/// How many principal components to keep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ComponentSelector {
    /// Exactly `k` components (1 <= k <= d).
    TopK(usize),
    /// The smallest k whose cumulative explained-variance ratio reaches the
    /// given fraction in (0, 1]. If total variance is zero, all components
    /// are kept.
    VarianceFraction(f64),
}

/// Fitted principal-component transform.
#[derive(Debug, Clone, PartialEq)]
pub struct PcaModel {
    /// Column means of the fitted data (length d).
    pub mean: Vec<f64>,
    /// Row i is the i-th principal axis (k x d).
    pub components: Vec<Vec<f64>>,
    /// Covariance eigenvalues for the kept components, nonincreasing,
    /// clamped at zero.
    pub eigenvalues: Vec<f64>,
    /// Fraction of total variance carried by each kept component.
    pub explained_variance_ratio: Vec<f64>,
}

impl PcaModel {
    pub fn input_dim(&self) -> usize {
        self.mean.len()
    }

    pub fn n_components(&self) -> usize {
        self.components.len()
    }

    /// Projects rows into component space: `y = components * (x - mean)`.
    pub fn project(&self, rows: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
        let d = self.input_dim();
        rows.iter()
            .enumerate()
            .map(|(i, row)| {
                if row.len() != d {
                    return Err(Error::Shape(format!(
                        "row {i} has {} values but the PCA model expects {d}",
                        row.len()
                    )));
                }
                Ok(self
                    .components
                    .iter()
                    .map(|axis| axis.iter().zip(row).zip(&self.mean).map(|((a, x), m)| a * (x - m)).sum())
                    .collect())
            })
            .collect()
    }

    /// Maps projected rows back to feature space:
    /// `x_hat = mean + components^T * y`. Exact when all components were
    /// kept.
    pub fn reconstruct(&self, projected: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
        let k = self.n_components();
        projected
            .iter()
            .enumerate()
            .map(|(i, y)| {
                if y.len() != k {
                    return Err(Error::Shape(format!(
                        "projected row {i} has {} values but the model kept {k} components",
                        y.len()
                    )));
                }
                let mut x = self.mean.clone();
                for (axis, coef) in self.components.iter().zip(y) {
                    for (xj, aj) in x.iter_mut().zip(axis) {
                        *xj += coef * aj;
                    }
                }
                Ok(x)
            })
            .collect()
    }
}

/// Fits a PCA model on the rows: covariance eigendecomposition with
/// eigenvalues clamped at zero, components selected per `selector`.
pub fn fit_pca(rows: &[Vec<f64>], selector: ComponentSelector) -> Result<PcaModel> {
    let cov = covariance(rows)?;
    let d = cov.order();
    let mean = column_means(rows, d);
    let (raw_values, vectors) = sym_eigen(&cov, 1e-12, 100)?;
    let eigenvalues: Vec<f64> = raw_values.iter().map(|v| v.max(0.0)).collect();
    let total: f64 = eigenvalues.iter().sum();
    let ratios: Vec<f64> = eigenvalues
        .iter()
        .map(|v| if total > 0.0 { v / total } else { 0.0 })
        .collect();

    let k = match selector {
        ComponentSelector::TopK(k) => {
            if k == 0 || k > d {
                return Err(Error::Parameter(format!(
                    "component count {k} outside 1..={d}"
                )));
            }
            k
        }
        ComponentSelector::VarianceFraction(f) => {
            if !(f > 0.0 && f <= 1.0) {
                return Err(Error::Parameter(format!(
                    "variance fraction {f} outside (0, 1]"
                )));
            }
            let mut cum = 0.0;
            let mut k = d;
            for (i, r) in ratios.iter().enumerate() {
                cum += r;
                if cum >= f {
                    k = i + 1;
                    break;
                }
            }
            k
        }
    };

    Ok(PcaModel {
        mean,
        components: vectors[..k].to_vec(),
        eigenvalues: eigenvalues[..k].to_vec(),
        explained_variance_ratio: ratios[..k].to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn naive_covariance(rows: &[Vec<f64>]) -> Vec<Vec<f64>> {
        let n = rows.len();
        let d = rows[0].len();
        let means: Vec<f64> =
            (0..d).map(|j| rows.iter().map(|r| r[j]).sum::<f64>() / n as f64).collect();
        let mut cov = vec![vec![0.0; d]; d];
        #[allow(clippy::needless_range_loop)]
        for i in 0..d {
            for j in 0..d {
                let mut s = 0.0;
                for row in rows {
                    s += (row[i] - means[i]) * (row[j] - means[j]);
                }
                cov[i][j] = s / n as f64;
            }
        }
        cov
    }

    #[test]
    fn covariance_of_perfectly_correlated_pair() {
        let rows = vec![vec![1.0, 1.0], vec![-1.0, -1.0]];
        let cov = covariance(&rows).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_abs_diff_eq!(cov.get(i, j), 1.0, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn covariance_of_identical_rows_is_zero() {
        let rows = vec![vec![3.0, -2.0, 7.0]; 5];
        let cov = covariance(&rows).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(cov.get(i, j), 0.0);
            }
        }
    }

    #[test]
    #[allow(clippy::needless_range_loop)] // (i, j) indexing mirrors the matrix math
    fn covariance_matches_naive_double_loop() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let rows: Vec<Vec<f64>> = (0..20)
            .map(|_| (0..5).map(|_| rng.gen_range(-10.0..10.0)).collect())
            .collect();
        let cov = covariance(&rows).unwrap();
        let oracle = naive_covariance(&rows);
        for i in 0..5 {
            for j in 0..5 {
                assert_abs_diff_eq!(cov.get(i, j), oracle[i][j], epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn covariance_needs_two_rows() {
        assert!(matches!(covariance(&[vec![1.0]]), Err(Error::Parameter(_))));
        assert!(matches!(covariance(&[]), Err(Error::Parameter(_))));
    }

    #[test]
    fn eigen_of_diagonal_matrix() {
        let m = SymMatrix::new(2, vec![2.0, 0.0, 0.0, 1.0]).unwrap();
        let (vals, vecs) = sym_eigen(&m, 1e-12, 100).unwrap();
        assert_eq!(vals, vec![2.0, 1.0]);
        assert_eq!(vecs[0], vec![1.0, 0.0]);
        assert_eq!(vecs[1], vec![0.0, 1.0]);
    }

    #[test]
    fn eigen_of_rank_one_matrix() {
        let m = SymMatrix::new(2, vec![1.0, 1.0, 1.0, 1.0]).unwrap();
        let (vals, vecs) = sym_eigen(&m, 1e-12, 100).unwrap();
        assert_abs_diff_eq!(vals[0], 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(vals[1], 0.0, epsilon = 1e-12);
        let s = 1.0 / 2.0f64.sqrt();
        assert_abs_diff_eq!(vecs[0][0], s, epsilon = 1e-12);
        assert_abs_diff_eq!(vecs[0][1], s, epsilon = 1e-12);
    }

    fn random_symmetric(d: usize, rng: &mut ChaCha8Rng) -> SymMatrix {
        let mut data = vec![0.0; d * d];
        for i in 0..d {
            for j in i..d {
                let v = rng.gen_range(-5.0..5.0);
                data[i * d + j] = v;
                data[j * d + i] = v;
            }
        }
        SymMatrix::new(d, data).unwrap()
    }

    /// Independent largest-eigenvalue oracle: power iteration on A + cI
    /// (shifted so the top eigenvalue of the shifted matrix is the algebraic
    /// maximum), run from a fixed start vector.
    fn power_iteration_top(m: &SymMatrix) -> f64 {
        let d = m.order();
        let shift = m.frobenius_norm() + 1.0;
        let mut v: Vec<f64> = (0..d).map(|i| 1.0 + (i as f64) * 0.01).collect();
        let mut lambda_shifted = 0.0;
        for _ in 0..20_000 {
            let mut w = m.mul_vec(&v).unwrap();
            for (wi, vi) in w.iter_mut().zip(&v) {
                *wi += shift * vi;
            }
            let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
            for x in &mut w {
                *x /= norm;
            }
            lambda_shifted = norm;
            v = w;
        }
        lambda_shifted - shift
    }

    #[test]
    fn eigen_matches_power_iteration_and_residuals() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let m = random_symmetric(6, &mut rng);
            let (vals, vecs) = sym_eigen(&m, 1e-12, 100).unwrap();
            assert_abs_diff_eq!(vals[0], power_iteration_top(&m), epsilon = 1e-6);
            let scale = m.frobenius_norm();
            for (lambda, vec) in vals.iter().zip(&vecs) {
                let av = m.mul_vec(vec).unwrap();
                let resid: f64 = av
                    .iter()
                    .zip(vec)
                    .map(|(a, v)| (a - lambda * v).powi(2))
                    .sum::<f64>()
                    .sqrt();
                assert!(resid <= 1e-8 * scale, "residual {resid} too large for {lambda}");
            }
            // Orthonormality.
            for i in 0..6 {
                for j in 0..6 {
                    let dot: f64 = vecs[i].iter().zip(&vecs[j]).map(|(a, b)| a * b).sum();
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert_abs_diff_eq!(dot, want, epsilon = 1e-9);
                }
            }
            // Trace preservation.
            let trace: f64 = (0..6).map(|i| m.get(i, i)).sum();
            assert_abs_diff_eq!(vals.iter().sum::<f64>(), trace, epsilon = 1e-9);
            // Sorted nonincreasing.
            for w in vals.windows(2) {
                assert!(w[0] >= w[1]);
            }
        }
    }

    #[test]
    fn eigen_reports_non_convergence() {
        let m = SymMatrix::new(2, vec![1.0, 1.0, 1.0, 1.0]).unwrap();
        let err = sym_eigen(&m, 1e-12, 0).unwrap_err();
        assert!(matches!(err, Error::Numerical(_)));
        assert!(err.to_string().contains("off-diagonal norm"), "got: {err}");
    }

    #[test]
    fn eigen_handles_trivial_orders() {
        let empty = SymMatrix::new(0, vec![]).unwrap();
        let (vals, vecs) = sym_eigen(&empty, 1e-12, 100).unwrap();
        assert!(vals.is_empty() && vecs.is_empty());

        let single = SymMatrix::new(1, vec![-4.5]).unwrap();
        let (vals, vecs) = sym_eigen(&single, 1e-12, 100).unwrap();
        assert_eq!(vals, vec![-4.5]);
        assert_eq!(vecs, vec![vec![1.0]]);
    }

    #[test]
    fn pca_on_collinear_data_keeps_one_direction() {
        let rows: Vec<Vec<f64>> = (0..10).map(|i| vec![i as f64, i as f64]).collect();
        let model = fit_pca(&rows, ComponentSelector::VarianceFraction(0.95)).unwrap();
        assert_eq!(model.n_components(), 1);
        assert_abs_diff_eq!(model.explained_variance_ratio[0], 1.0, epsilon = 1e-12);
        let s = 1.0 / 2.0f64.sqrt();
        assert_abs_diff_eq!(model.components[0][0], s, epsilon = 1e-9);
        assert_abs_diff_eq!(model.components[0][1], s, epsilon = 1e-9);
    }

    #[test]
    fn variance_fraction_selects_smallest_sufficient_k() {
        // Six zero-mean rows whose covariance is diag(6, 3, 1) / something
        // proportional — variance shares 0.6 / 0.3 / 0.1.
        let a = 6.0f64.sqrt();
        let b = 3.0f64.sqrt();
        let rows = vec![
            vec![a, 0.0, 0.0],
            vec![-a, 0.0, 0.0],
            vec![0.0, b, 0.0],
            vec![0.0, -b, 0.0],
            vec![0.0, 0.0, 1.0],
            vec![0.0, 0.0, -1.0],
        ];
        let k_of = |f: f64| fit_pca(&rows, ComponentSelector::VarianceFraction(f)).unwrap().n_components();
        assert_eq!(k_of(0.55), 1);
        assert_eq!(k_of(0.85), 2);
        assert_eq!(k_of(0.95), 3);
        assert_eq!(k_of(1.0), 3);
    }

    #[test]
    fn top_k_ratios_sum_to_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let rows: Vec<Vec<f64>> =
            (0..30).map(|_| (0..4).map(|_| rng.gen_range(-3.0..3.0)).collect()).collect();
        let model = fit_pca(&rows, ComponentSelector::TopK(4)).unwrap();
        assert_abs_diff_eq!(
            model.explained_variance_ratio.iter().sum::<f64>(),
            1.0,
            epsilon = 1e-9
        );
        // Projected column variance (population convention) equals each
        // eigenvalue.
        let projected = model.project(&rows).unwrap();
        for j in 0..4 {
            let col: Vec<f64> = projected.iter().map(|r| r[j]).collect();
            let mean = col.iter().sum::<f64>() / col.len() as f64;
            let var = col.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / col.len() as f64;
            assert_abs_diff_eq!(var, model.eigenvalues[j], epsilon = 1e-9);
        }
    }

    #[test]
    fn projecting_the_mean_gives_zero() {
        let rows = vec![vec![1.0, 10.0], vec![3.0, 14.0], vec![5.0, 12.0]];
        let model = fit_pca(&rows, ComponentSelector::TopK(2)).unwrap();
        let projected = model.project(std::slice::from_ref(&model.mean)).unwrap();
        for v in &projected[0] {
            assert_abs_diff_eq!(*v, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn full_rank_projection_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let rows: Vec<Vec<f64>> =
            (0..25).map(|_| (0..5).map(|_| rng.gen_range(-8.0..8.0)).collect()).collect();
        let model = fit_pca(&rows, ComponentSelector::TopK(5)).unwrap();
        let back = model.reconstruct(&model.project(&rows).unwrap()).unwrap();
        for (orig, rec) in rows.iter().zip(&back) {
            for (a, b) in orig.iter().zip(rec) {
                assert_abs_diff_eq!(*a, *b, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn pca_rejects_bad_selectors_and_shapes() {
        let rows = vec![vec![1.0, 2.0], vec![3.0, 4.0], vec![5.0, 0.0]];
        assert!(matches!(fit_pca(&rows, ComponentSelector::TopK(0)), Err(Error::Parameter(_))));
        assert!(matches!(fit_pca(&rows, ComponentSelector::TopK(3)), Err(Error::Parameter(_))));
        assert!(matches!(
            fit_pca(&rows, ComponentSelector::VarianceFraction(0.0)),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            fit_pca(&rows, ComponentSelector::VarianceFraction(1.2)),
            Err(Error::Parameter(_))
        ));
        let model = fit_pca(&rows, ComponentSelector::TopK(2)).unwrap();
        assert!(matches!(model.project(&[vec![1.0]]), Err(Error::Shape(_))));
    }

    #[test]
    fn pca_fit_is_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let rows: Vec<Vec<f64>> =
            (0..40).map(|_| (0..6).map(|_| rng.gen_range(-2.0..2.0)).collect()).collect();
        let a = fit_pca(&rows, ComponentSelector::VarianceFraction(0.9)).unwrap();
        let b = fit_pca(&rows, ComponentSelector::VarianceFraction(0.9)).unwrap();
        assert_eq!(a, b);
    }
}
