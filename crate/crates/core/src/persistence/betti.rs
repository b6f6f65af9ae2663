use super::bundle::up_bundle;
use super::down::down_factor_in_pair;
use super::PersistenceError;
use crate::complexes::ComplexPair;
use crate::spectral::{numerical_rank, SolverRegistry};

/// The q-th persistent Betti number of `K ⊆ L`: the nullity of
/// `Δ_{q,up}^{K,L} + Δ_{q,down}^K`, computed as `n_q^K` minus the numerical
/// rank of the stacked factor `[M | F]`.
pub fn persistent_betti(pair: &ComplexPair, q: usize) -> Result<usize, PersistenceError> {
    let bundle = up_bundle(pair, q, false)?;
    let f = down_factor_in_pair(pair, q);
    let stacked = bundle.m.hstack(&f);
    let n_k = bundle.n_k();
    if n_k == 0 {
        return Ok(0);
    }
    let sv = SolverRegistry::default().all_singular_values(&stacked, 0)?;
    Ok(n_k - numerical_rank(&sv, stacked.n_rows(), stacked.n_cols()))
}
