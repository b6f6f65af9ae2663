//! Spectra of persistent Laplacians as squared singular values of the
//! symmetrized factor `M`, where `Δ̃ = M Mᵀ`.
//!
//! Singular values come from Golub–Kahan–Lanczos bidiagonalization followed
//! by implicit-shift QR on the bidiagonal. Working with `M` instead of the
//! assembled Laplacian keeps small eigenvalues that a dense solver on `Δ`
//! would round away.

mod bidiag;
mod dense;
mod gkl;
mod operator;
mod solver;

use thiserror::Error;

pub use bidiag::{bidiagonal_singular_values, bidiagonal_svd, Bidiagonal};
pub use dense::{
    dense_oracle_eig, dense_singular_values, symmetric_eigenvalues, symmetrize_with_weights,
    symmetrizing_scale,
};
pub use gkl::{gkl_bidiagonalize, GklOptions, GklOutput};
pub use operator::{FnOperator, LinearOperator, Transposed};
pub use solver::{
    numerical_rank, rank_cutoff, DenseSolver, FullBidiagSolver, GklSolver, GramSolver, RawSpectrum,
    SolverRegistry, SpectrumResult, SpectrumSolver, Which, FULL_BIDIAG_CUTOFF,
};

use crate::persistence::UpLaplacianBundle;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not diagonally similar to a symmetric one (entries ({row}, {col}))")]
    NotSimilarizable { row: usize, col: usize },
    #[error("unknown solver '{0}'")]
    UnknownSolver(String),
    #[error("requested count must be at least 1")]
    InvalidCount,
    #[error("the iteration broke down before the full spectrum was found")]
    Incomplete,
}

/// `k` eigenvalues of `Δ_{q,up}^{K,L}` as squared singular values of the
/// bundle's factor `M`, with the default solver for `which`.
pub fn laplacian_spectrum(
    bundle: &UpLaplacianBundle,
    k: usize,
    which: Which,
    seed: u64,
) -> Result<SpectrumResult, SpectralError> {
    let reg = SolverRegistry::default();
    let name = SolverRegistry::default_for(which, bundle.m.n_rows(), bundle.m.n_cols());
    reg.spectrum(name, &bundle.m, k, which, seed)
}
