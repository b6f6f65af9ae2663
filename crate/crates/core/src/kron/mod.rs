//! The up persistent Laplacian of an unweighted pair as the Laplacian of a
//! weighted oriented hypergraph, its dual, and Cheeger-type bounds on the
//! smallest nonzero eigenvalue.
//!
//! Vertices are the q-cells of `K`; each column of `B_LK` is a hyperedge
//! whose input and output sets are the cells with `+1` and `-1` entries.

mod cheeger;

use std::fmt::Write as _;

use nalgebra::DMatrix;
use thiserror::Error;

pub use cheeger::{cheeger_bounds, polyhedron_stats, CheegerReport, PolyhedronStats};

use crate::format::fmt_f64;
use crate::persistence::UpLaplacianBundle;
use crate::sparse::CscMatrix;
use crate::spectral::SpectralError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KronError {
    #[error("the hypergraph identification needs unit weights on q- and (q+1)-cells")]
    WeightedL,
    #[error("hyperedge {edge} has entry {value} at vertex {vertex}; incidences must be -1, 0 or 1")]
    NonUnitIncidence { edge: usize, vertex: usize, value: i32 },
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrientedHypergraph {
    /// Vertices by hyperedges, entries in {-1, 0, 1}.
    pub incidence: CscMatrix<i32>,
    pub w0: Vec<f64>,
    pub w1: Vec<f64>,
}

impl OrientedHypergraph {
    pub fn n_vertices(&self) -> usize {
        self.incidence.n_rows()
    }

    pub fn n_edges(&self) -> usize {
        self.incidence.n_cols()
    }

    /// Vertices with `+1` and with `-1` in hyperedge `e`.
    pub fn in_out(&self, e: usize) -> (Vec<usize>, Vec<usize>) {
        let (rows, vals) = self.incidence.col(e);
        let mut ins = Vec::new();
        let mut outs = Vec::new();
        for (&i, &v) in rows.iter().zip(vals) {
            if v > 0 {
                ins.push(i);
            } else {
                outs.push(i);
            }
        }
        (ins, outs)
    }

    /// `hypergraph v1` text. Vertex names default to their indices.
    pub fn to_text(&self, labels: Option<&[String]>) -> String {
        let name = |i: usize| labels.map_or_else(|| i.to_string(), |l| l[i].clone());
        let mut out = format!("hypergraph v1 {} {}\n", self.n_vertices(), self.n_edges());
        for i in 0..self.n_vertices() {
            let _ = writeln!(out, "vertex {i} w={} name={}", fmt_f64(self.w0[i]), name(i));
        }
        for e in 0..self.n_edges() {
            let (ins, outs) = self.in_out(e);
            let join = |v: &[usize]| v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",");
            let _ = writeln!(
                out,
                "edge {e} w={} in={} out={}",
                fmt_f64(self.w1[e]),
                join(&ins),
                join(&outs)
            );
        }
        out
    }
}

/// The hypergraph with incidence `B_LK`, vertex weights 1 and hyperedge
/// weights `W_LK`.
pub fn to_hypergraph(bundle: &UpLaplacianBundle) -> Result<OrientedHypergraph, KronError> {
    if !bundle.unweighted {
        return Err(KronError::WeightedL);
    }
    if let Some((vertex, edge, value)) = bundle.b_lk.triplets().find(|t| t.2.abs() != 1) {
        return Err(KronError::NonUnitIncidence { edge, vertex, value });
    }
    Ok(OrientedHypergraph {
        incidence: bundle.b_lk.clone(),
        w0: vec![1.0; bundle.n_k()],
        w1: bundle.w_lk.clone(),
    })
}

/// `L₀ = W₀ 𝓘 W₁ 𝓘ᵀ`.
pub fn hypergraph_laplacian(h: &OrientedHypergraph) -> DMatrix<f64> {
    let i = h.incidence.to_f64().to_dense();
    let iw = DMatrix::from_fn(i.nrows(), i.ncols(), |r, c| h.w0[r] * i[(r, c)] * h.w1[c]);
    iw * i.transpose()
}

/// `Δ_dual = W₁ 𝓘ᵀ W₀ 𝓘`, which has the nonzero eigenvalues of `L₀`.
pub fn dual_laplacian(h: &OrientedHypergraph) -> DMatrix<f64> {
    let i = h.incidence.to_f64().to_dense();
    let it = DMatrix::from_fn(i.ncols(), i.nrows(), |r, c| h.w1[r] * i[(c, r)] * h.w0[c]);
    it * i
}
