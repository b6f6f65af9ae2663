//! Non-branching matrices: at most two nonzeros per row, entries in {-1, 0, 1}.
//!
//! Such a matrix is the transposed incidence matrix of a graph with loops:
//! columns are vertices, 2-nonzero rows are edges, 1-nonzero rows are loops.
//! Its kernel is spanned by one sign vector per orientable loop-free
//! connected component, which the weak reduction finds with union-find.

mod csr;
mod dsu;
pub mod exact;
mod io;
mod reduce;

pub use csr::{MatrixError, NonBranchingMatrix};
pub use dsu::{dsu_components, Dsu, Link, ParityDsu};
pub use io::{read_nb_matrix, write_nb_matrix, write_reduction_sidecar, MatrixFileError};
pub use reduce::{
    classify_components, rank, reorient, weak_reduce, Component, ComponentKind,
    ComponentPartition, UpperFactor, WeakReduction,
};
