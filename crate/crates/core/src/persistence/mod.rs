//! Up and down persistent Laplacians of pairs `K ⊆ L` that are non-branching
//! in dimension `q`, and their incremental update along cell-wise
//! filtrations.
//!
//! For `D = B_{q+1}^L(I_q^{L,K}, :)`, the kernel of `D` is spanned by the
//! signed indicator vectors of its regulable components, so
//! `Δ_{q,up}^{K,L} = B_LK W_LK B_LKᵀ (W_q^K)⁻¹` where `B_LK` holds one summed
//! column per regulable component plus the (q+1)-cells with no face outside
//! `K`, and `W_LK` holds the reciprocal sums of reciprocal weights.

mod betti;
mod bundle;
mod down;
mod filtration;
mod sum;

use thiserror::Error;

pub use betti::persistent_betti;
pub use bundle::{up_bundle, BundleColumn, ColumnKind, UpLaplacianBundle};
pub use down::{down_laplacian, DownLaplacian};
pub use filtration::{filtration_run, FiltrationEngine};
pub use sum::ExactSum;

use crate::complexes::ComplexError;
use crate::spectral::SpectralError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PersistenceError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("filtration step {index}: {reason}")]
    InvalidStep { index: usize, reason: &'static str },
}
