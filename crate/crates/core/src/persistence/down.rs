use nalgebra::DMatrix;

use super::PersistenceError;
use crate::complexes::{Complex, ComplexError, ComplexPair};
use crate::sparse::CscMatrix;

/// The down Laplacian `W_q⁻¹ B_qᵀ W_{q-1} B_q` of a complex.
#[derive(Debug, Clone, PartialEq)]
pub struct DownLaplacian {
    pub q: usize,
    /// `W_q^{-1/2} B_qᵀ W_{q-1}^{1/2}`, rows indexed by q-cells.
    pub factor: CscMatrix<f64>,
    pub dense: Option<DMatrix<f64>>,
}

fn down_factor(b: &CscMatrix<i32>, w_q: &[f64], w_lower: &[f64]) -> CscMatrix<f64> {
    b.transpose()
        .map(|i, j, v| v as f64 * (w_lower[j] / w_q[i]).sqrt())
}

pub fn down_laplacian(c: &Complex, q: usize, materialize: bool) -> Result<DownLaplacian, PersistenceError> {
    if q == 0 {
        return Err(ComplexError::DimensionOutOfRange { q }.into());
    }
    let b = c.boundary_matrix(q)?;
    let (w_q, w_lower) = (c.weights(q), c.weights(q - 1));
    let factor = down_factor(&b, w_q, w_lower);
    let dense = materialize.then(|| {
        let bd = b.to_f64().to_dense();
        let n = bd.ncols();
        let left = DMatrix::from_fn(n, bd.nrows(), |i, j| bd[(j, i)] * w_lower[j] / w_q[i]);
        left * bd
    });
    Ok(DownLaplacian { q, factor, dense })
}

/// Down factor of `K` inside a pair: rows are the q-cells of `K` (in `L`
/// order), columns all (q-1)-cells of `L`. Empty for `q = 0`.
pub(crate) fn down_factor_in_pair(pair: &ComplexPair, q: usize) -> CscMatrix<f64> {
    let big = pair.big();
    let k = pair.k_indices(q);
    if q == 0 {
        return CscMatrix::zeros(k.len(), 0);
    }
    let Some(b) = big.boundary_ref(q) else {
        return CscMatrix::zeros(k.len(), big.n_cells(q - 1));
    };
    let wq = big.weights(q);
    let w_q: Vec<f64> = k.iter().map(|&i| wq[i]).collect();
    down_factor(&b.select_columns(&k), &w_q, big.weights(q - 1))
}
