//! Internal dense linear algebra helpers over complex scalars.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Singular values of `m`, sorted in descending order.
pub(crate) fn singular_values(m: &DMatrix<Complex64>) -> Vec<f64> {
    let mut sv: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    sv
}

/// Numerical rank: number of singular values `σ` with `σ / σ_max > rel_tol`.
/// A matrix with `σ_max == 0` has rank 0.
pub(crate) fn numerical_rank(m: &DMatrix<Complex64>, rel_tol: f64) -> usize {
    let sv = singular_values(m);
    match sv.first() {
        Some(&smax) if smax > 0.0 => sv.iter().filter(|&&s| s / smax > rel_tol).count(),
        _ => 0,
    }
}

/// Minimum-norm least squares solution of `a x ≈ b` via SVD, discarding
/// singular values below `rel_tol · σ_max`. Returns the solution together
/// with the Euclidean norm of the residual `a x − b`.
pub(crate) fn lstsq(
    a: &DMatrix<Complex64>,
    b: &DVector<Complex64>,
    rel_tol: f64,
) -> (DVector<Complex64>, f64) {
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.iter().cloned().fold(0.0_f64, f64::max);
    let eps = if smax > 0.0 { rel_tol * smax } else { f64::MAX };
    let x = svd
        .solve(b, eps)
        .unwrap_or_else(|_| DVector::zeros(a.ncols()));
    let residual = (a * &x - b).norm();
    (x, residual)
}

/// Orthonormal basis for the column space of `m`: the left singular vectors
/// belonging to singular values above `rel_tol · σ_max`.
pub(crate) fn orthonormal_columns(m: &DMatrix<Complex64>, rel_tol: f64) -> DMatrix<Complex64> {
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("SVD with U requested");
    let smax = svd.singular_values.iter().cloned().fold(0.0_f64, f64::max);
    if smax == 0.0 {
        return DMatrix::zeros(m.nrows(), 0);
    }
    // svd.singular_values is descending for nalgebra's svd(); count the kept ones.
    let mut sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let rank = sv.iter().filter(|&&s| s / smax > rel_tol).count();
    u.columns(0, rank).into_owned()
}

/// Eigenvalues of a square complex matrix via its Schur form.
pub(crate) fn eigenvalues(m: &DMatrix<Complex64>) -> Option<Vec<Complex64>> {
    if m.nrows() == 0 {
        return Some(Vec::new());
    }
    let schur = m.clone().try_schur(f64::EPSILON, 100_000)?;
    schur.eigenvalues().map(|ev| ev.iter().copied().collect())
}

/// Absolute determinant of the row-normalized matrix, i.e. `|det M|`
/// divided by the Hadamard bound (product of row Euclidean norms).
/// Returns 0 when any row is identically zero.
pub(crate) fn hadamard_normalized_det(m: &DMatrix<Complex64>) -> f64 {
    let mut scaled = m.clone();
    for i in 0..scaled.nrows() {
        let norm = scaled.row(i).norm();
        if norm == 0.0 {
            return 0.0;
        }
        for j in 0..scaled.ncols() {
            scaled[(i, j)] /= Complex64::new(norm, 0.0);
        }
    }
    scaled.determinant().norm()
}
