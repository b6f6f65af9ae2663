use std::collections::BTreeMap;

use serde::Serialize;

use super::KronError;
use crate::complexes::ComplexKind;
use crate::persistence::UpLaplacianBundle;
use crate::spectral::{laplacian_spectrum, Which};

/// Volumes and boundary areas of the polyhedra behind the columns of `B_LK`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolyhedronStats {
    /// (q+1)-cells per column.
    pub volume: Vec<usize>,
    /// Nonzeros per column.
    pub area: Vec<usize>,
    /// `(i, j, |⟨b_i, b_j⟩|)` for `i < j` with a nonzero inner product.
    pub shared: Vec<(usize, usize, u64)>,
    /// Area minus the areas shared with every other column.
    pub interior: Vec<i64>,
}

impl PolyhedronStats {
    pub fn shared_area(&self, i: usize, j: usize) -> u64 {
        let key = (i.min(j), i.max(j));
        self.shared
            .binary_search_by_key(&key, |t| (t.0, t.1))
            .map_or(0, |p| self.shared[p].2)
    }
}

pub fn polyhedron_stats(bundle: &UpLaplacianBundle) -> PolyhedronStats {
    let b = &bundle.b_lk;
    let h = b.n_cols();
    let volume = bundle.columns.iter().map(|c| c.volume).collect();
    let area: Vec<usize> = (0..h).map(|j| b.col(j).0.len()).collect();
    let mut inner: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    let bt = b.transpose();
    for r in 0..bt.n_cols() {
        let (cols, vals) = bt.col(r);
        for x in 0..cols.len() {
            for y in x + 1..cols.len() {
                *inner.entry((cols[x], cols[y])).or_insert(0) += (vals[x] * vals[y]) as i64;
            }
        }
    }
    let shared: Vec<(usize, usize, u64)> = inner
        .into_iter()
        .filter(|e| e.1 != 0)
        .map(|((i, j), v)| (i, j, v.unsigned_abs()))
        .collect();
    let mut interior: Vec<i64> = area.iter().map(|&a| a as i64).collect();
    for &(i, j, v) in &shared {
        interior[i] -= v as i64;
        interior[j] -= v as i64;
    }
    PolyhedronStats {
        volume,
        area,
        shared,
        interior,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheegerReport {
    /// `min Â(P_j) / V(P_j)`; `None` without columns.
    pub lower: Option<f64>,
    /// `min A(P_j) / V(P_j)`; only a bound when `upper_valid`.
    pub upper: Option<f64>,
    /// Smallest nonzero eigenvalue of `Δ_{q,up}^{K,L}`.
    pub lambda_min: Option<f64>,
    pub full_column_rank: bool,
    pub nonzero: bool,
    /// Both hypotheses of the upper bound hold.
    pub upper_valid: bool,
    /// `q + 2` for simplicial pairs, `2(q + 1)` for cubical ones; bounds
    /// `lambda_min` when `upper_valid`.
    pub dimension_cap: Option<f64>,
}

pub fn cheeger_bounds(
    bundle: &UpLaplacianBundle,
    stats: &PolyhedronStats,
    seed: u64,
) -> Result<CheegerReport, KronError> {
    if !bundle.unweighted {
        return Err(KronError::WeightedL);
    }
    let ratio = |num: &dyn Fn(usize) -> f64| {
        (0..stats.volume.len())
            .map(|j| num(j) / stats.volume[j] as f64)
            .min_by(f64::total_cmp)
    };
    let lower = ratio(&|j| stats.interior[j] as f64);
    let upper = ratio(&|j| stats.area[j] as f64);
    let nonzero = bundle.b_lk.nnz() > 0;
    let lambda_min = if nonzero {
        laplacian_spectrum(bundle, 1, Which::Bottom, seed)?
            .eigenvalues
            .first()
            .copied()
    } else {
        None
    };
    let q = bundle.q as f64;
    let dimension_cap = match bundle.kind {
        ComplexKind::Simplicial => Some(q + 2.0),
        ComplexKind::Cubical => Some(2.0 * (q + 1.0)),
        ComplexKind::Abstract => None,
    };
    Ok(CheegerReport {
        lower,
        upper,
        lambda_min,
        full_column_rank: bundle.l_full_column_rank,
        nonzero,
        upper_valid: bundle.l_full_column_rank && nonzero,
        dimension_cap,
    })
}
