//! Thin wrappers over nalgebra for the dense symmetric problems used here.

use alloc::vec::Vec;
use nalgebra::DMatrix;

/// Eigenvalues of a real symmetric matrix in descending order.
pub fn symmetric_eigenvalues_desc(matrix: DMatrix<f64>) -> Vec<f64> {
    let mut values: Vec<f64> = matrix.symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(|a, b| b.total_cmp(a));
    values
}

/// `log det` through an f64 Cholesky factorization, `None` when it fails.
pub fn cholesky_log_det(matrix: DMatrix<f64>) -> Option<f64> {
    let chol = matrix.cholesky()?;
    let l = chol.l_dirty();
    Some(
        2.0 * (0..l.nrows())
            .map(|i| num_traits::Float::ln(l[(i, i)]))
            .sum::<f64>(),
    )
}
