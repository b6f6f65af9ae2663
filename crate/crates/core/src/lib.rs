//! Persistent Laplacians of non-branching complexes.
//!
//! Kernel bases of non-branching matrices come from a union-find pass
//! ([`nbmatrix::weak_reduce`]). For a pair of complexes `K ⊆ L` that are
//! non-branching in dimension `q`, this gives the up persistent Laplacian as a
//! pair of small factors ([`persistence::up_bundle`]) instead of a Schur
//! complement. Spectra come from singular values of a sparse symmetrized
//! factor ([`spectral`]), and [`kron`] realizes the Laplacian as a weighted
//! hypergraph with Cheeger-type bounds.

pub mod complexes;
pub mod format;
pub mod kron;
pub mod nbmatrix;
pub mod persistence;
pub mod sparse;
pub mod spectral;
