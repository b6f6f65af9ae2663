//! Dense reference eigen- and singular-value routines.

use nalgebra::{DMatrix, SymmetricEigen};

use super::SpectralError;

/// Eigenvalues of a symmetric matrix, descending. Only the lower triangle's
/// average with the upper one is used.
pub fn symmetric_eigenvalues(a: &DMatrix<f64>) -> Vec<f64> {
    if a.nrows() == 0 {
        return Vec::new();
    }
    let sym = (a + a.transpose()) * 0.5;
    let mut ev: Vec<f64> = SymmetricEigen::new(sym).eigenvalues.iter().copied().collect();
    ev.sort_by(|x, y| y.total_cmp(x));
    ev
}

/// Diagonal `p > 0` with `diag(p) A diag(p)⁻¹` symmetric, when one exists.
///
/// Matrices of the form `D S` or `S D` with `D` positive diagonal and `S`
/// symmetric (every Laplacian in this crate) qualify. The scaling is fixed
/// along a spanning forest of the nonzero pattern and checked on every entry.
pub fn symmetrizing_scale(a: &DMatrix<f64>) -> Result<Vec<f64>, SpectralError> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(SpectralError::NotSquare {
            rows: n,
            cols: a.ncols(),
        });
    }
    let scale = a.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let zero = |x: f64| x.abs() <= 1e-14 * scale;
    // p_j^2 = p_i^2 a_ij / a_ji
    let mut p2 = vec![0.0f64; n];
    for root in 0..n {
        if p2[root] != 0.0 {
            continue;
        }
        p2[root] = 1.0;
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i == j || (zero(a[(i, j)]) && zero(a[(j, i)])) {
                    continue;
                }
                if zero(a[(i, j)]) || zero(a[(j, i)]) || a[(i, j)] * a[(j, i)] < 0.0 {
                    return Err(SpectralError::NotSimilarizable { row: i, col: j });
                }
                let want = p2[i] * a[(i, j)] / a[(j, i)];
                if p2[j] == 0.0 {
                    p2[j] = want;
                    stack.push(j);
                } else if (p2[j] - want).abs() > 1e-8 * p2[j].max(want) {
                    return Err(SpectralError::NotSimilarizable { row: i, col: j });
                }
            }
        }
    }
    Ok(p2.into_iter().map(f64::sqrt).collect())
}

/// Full spectrum of a square matrix that is diagonally similar to a
/// symmetric one, descending, via a dense symmetric eigensolver.
pub fn dense_oracle_eig(a: &DMatrix<f64>) -> Result<Vec<f64>, SpectralError> {
    let p = symmetrizing_scale(a)?;
    let n = a.nrows();
    let t = DMatrix::from_fn(n, n, |i, j| p[i] * a[(i, j)] / p[j]);
    Ok(symmetric_eigenvalues(&t))
}

/// `diag(w)^{-1/2} A diag(w)^{1/2}`, the symmetrization of `A = S diag(w)⁻¹`.
pub fn symmetrize_with_weights(a: &DMatrix<f64>, w: &[f64]) -> Result<DMatrix<f64>, SpectralError> {
    if let Some(i) = w.iter().position(|&x| !(x > 0.0)) {
        return Err(SpectralError::NotSimilarizable { row: i, col: i });
    }
    let n = a.nrows();
    Ok(DMatrix::from_fn(n, n, |i, j| a[(i, j)] * (w[j] / w[i]).sqrt()))
}

/// Singular values of a dense matrix, descending.
pub fn dense_singular_values(a: &DMatrix<f64>) -> Vec<f64> {
    if a.nrows() == 0 || a.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = a.clone().svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s
}
