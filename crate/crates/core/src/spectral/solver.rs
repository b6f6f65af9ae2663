use std::collections::BTreeMap;

use nalgebra::DMatrix;
use serde::Serialize;

use super::bidiag::bidiagonal_svd;
use super::dense::{dense_singular_values, symmetric_eigenvalues};
use super::gkl::{gkl_bidiagonalize, GklOptions};
use super::operator::{LinearOperator, Transposed};
use super::SpectralError;

/// Largest size of the smaller factor dimension for which `bottom` runs a
/// full bidiagonalization; beyond it the dense Gram matrix of the smaller
/// side is used.
pub const FULL_BIDIAG_CUTOFF: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Which {
    /// Largest values.
    Top,
    /// Smallest values above the numerical-rank cutoff.
    Bottom,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumResult {
    pub solver: String,
    pub which: Which,
    pub k: usize,
    pub seed: u64,
    /// Descending.
    pub singular_values: Vec<f64>,
    /// Squares of `singular_values`.
    pub eigenvalues: Vec<f64>,
    pub converged: Vec<bool>,
    pub residual_estimates: Vec<f64>,
    pub iterations: usize,
    /// Threshold separating zero from nonzero singular values.
    pub cutoff: f64,
}

/// `σ_max · max(m, n) · 2⁻⁵²`.
pub fn rank_cutoff(sigma_max: f64, m: usize, n: usize) -> f64 {
    sigma_max * m.max(n) as f64 * f64::EPSILON
}

/// Number of singular values above [`rank_cutoff`].
pub fn numerical_rank(singular_values: &[f64], m: usize, n: usize) -> usize {
    let smax = singular_values.iter().fold(0.0f64, |a, &b| a.max(b));
    let cut = rank_cutoff(smax, m, n);
    singular_values.iter().filter(|&&s| s > cut).count()
}

/// Singular values with optional per-value residuals, descending.
#[derive(Debug, Clone)]
pub struct RawSpectrum {
    pub values: Vec<f64>,
    pub residuals: Vec<f64>,
    pub iterations: usize,
    /// True when `values` holds every singular value of the operator.
    pub complete: bool,
}

/// A way of computing singular values of an operator.
pub trait SpectrumSolver: Send + Sync {
    fn name(&self) -> &'static str;
    /// At least the `k` largest singular values, or all of them when
    /// `complete` is requested.
    fn singular_values(
        &self,
        op: &dyn LinearOperator,
        k: usize,
        complete: bool,
        seed: u64,
    ) -> Result<RawSpectrum, SpectralError>;
}

fn tall<'a>(op: &'a dyn LinearOperator, holder: &'a Transposed<'a>) -> &'a dyn LinearOperator {
    if op.nrows() >= op.ncols() {
        op
    } else {
        holder
    }
}

/// Golub–Kahan–Lanczos on the taller orientation, `B_k` solved by QR.
#[derive(Debug, Clone, Copy)]
pub struct GklSolver {
    pub options: GklOptions,
    /// Extra Lanczos steps beyond `k` for the top values.
    pub oversample: usize,
}

impl Default for GklSolver {
    fn default() -> Self {
        Self {
            options: GklOptions::default(),
            oversample: 20,
        }
    }
}

impl SpectrumSolver for GklSolver {
    fn name(&self) -> &'static str {
        "gkl"
    }

    fn singular_values(
        &self,
        op: &dyn LinearOperator,
        k: usize,
        complete: bool,
        seed: u64,
    ) -> Result<RawSpectrum, SpectralError> {
        let t = Transposed(op);
        let a = tall(op, &t);
        let full = a.ncols();
        let steps = if complete { full } else { (2 * k).max(k + self.oversample).min(full) };
        let g = gkl_bidiagonalize(a, steps, seed, self.options);
        let (values, left) = bidiagonal_svd(&g.bidiagonal, true);
        let left = left.expect("left vectors requested");
        let last = g.steps.saturating_sub(1);
        let residuals = (0..values.len()).map(|i| (g.beta_next * left[last][i]).abs()).collect();
        Ok(RawSpectrum {
            values,
            residuals,
            iterations: g.steps,
            complete: g.steps == full && !g.stopped_early,
        })
    }
}

/// [`GklSolver`] run to full length, so every singular value is returned.
#[derive(Debug, Clone, Copy, Default)]
pub struct FullBidiagSolver(pub GklSolver);

impl SpectrumSolver for FullBidiagSolver {
    fn name(&self) -> &'static str {
        "full-bidiag"
    }

    fn singular_values(
        &self,
        op: &dyn LinearOperator,
        k: usize,
        _complete: bool,
        seed: u64,
    ) -> Result<RawSpectrum, SpectralError> {
        self.0.singular_values(op, k, true, seed)
    }
}

/// Eigenvalues of the dense Gram matrix of the smaller side.
#[derive(Debug, Clone, Copy, Default)]
pub struct GramSolver;

impl SpectrumSolver for GramSolver {
    fn name(&self) -> &'static str {
        "gram"
    }

    fn singular_values(
        &self,
        op: &dyn LinearOperator,
        _k: usize,
        _complete: bool,
        _seed: u64,
    ) -> Result<RawSpectrum, SpectralError> {
        let t = Transposed(op);
        let a = tall(op, &t);
        let n = a.ncols();
        let mut cols = Vec::with_capacity(n);
        let mut e = vec![0.0; n];
        let mut col = vec![0.0; a.nrows()];
        for j in 0..n {
            e[j] = 1.0;
            a.apply(&e, &mut col);
            e[j] = 0.0;
            cols.push(col.clone());
        }
        let gram = DMatrix::from_fn(n, n, |i, j| cols[i].iter().zip(&cols[j]).map(|(x, y)| x * y).sum());
        // eigenvalues of the Gram matrix carry absolute errors near n·ε·λ_max,
        // so anything that small is indistinguishable from zero
        let ev = symmetric_eigenvalues(&gram);
        let noise = ev.first().copied().unwrap_or(0.0) * n as f64 * f64::EPSILON;
        let values: Vec<f64> = ev.into_iter().map(|l| if l > noise { l.sqrt() } else { 0.0 }).collect();
        Ok(RawSpectrum {
            residuals: vec![0.0; values.len()],
            values,
            iterations: 0,
            complete: true,
        })
    }
}

/// Dense SVD of the materialized operator; a reference, never a default.
#[derive(Debug, Clone, Copy, Default)]
pub struct DenseSolver;

impl SpectrumSolver for DenseSolver {
    fn name(&self) -> &'static str {
        "dense"
    }

    fn singular_values(
        &self,
        op: &dyn LinearOperator,
        _k: usize,
        _complete: bool,
        _seed: u64,
    ) -> Result<RawSpectrum, SpectralError> {
        let (m, n) = (op.nrows(), op.ncols());
        let mut dense = DMatrix::zeros(m, n);
        let mut e = vec![0.0; n];
        let mut col = vec![0.0; m];
        for j in 0..n {
            e[j] = 1.0;
            op.apply(&e, &mut col);
            e[j] = 0.0;
            dense.column_mut(j).copy_from_slice(&col);
        }
        let values = dense_singular_values(&dense);
        Ok(RawSpectrum {
            residuals: vec![0.0; values.len()],
            values,
            iterations: 0,
            complete: true,
        })
    }
}

/// Named spectrum solvers.
pub struct SolverRegistry {
    solvers: BTreeMap<&'static str, Box<dyn SpectrumSolver>>,
}

impl Default for SolverRegistry {
    fn default() -> Self {
        Self::with_gkl_options(GklOptions::default())
    }
}

impl SolverRegistry {
    /// `gkl`, `full-bidiag`, `gram` and `dense`, with the Lanczos-based ones
    /// using `options`.
    pub fn with_gkl_options(options: GklOptions) -> Self {
        let gkl = GklSolver {
            options,
            ..GklSolver::default()
        };
        let mut r = Self::empty();
        r.register(Box::new(gkl));
        r.register(Box::new(FullBidiagSolver(gkl)));
        r.register(Box::new(GramSolver));
        r.register(Box::new(DenseSolver));
        r
    }

    pub fn empty() -> Self {
        Self {
            solvers: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, s: Box<dyn SpectrumSolver>) {
        self.solvers.insert(s.name(), s);
    }

    pub fn get(&self, name: &str) -> Result<&dyn SpectrumSolver, SpectralError> {
        self.solvers
            .get(name)
            .map(|b| b.as_ref())
            .ok_or_else(|| SpectralError::UnknownSolver(name.to_string()))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.solvers.keys().copied().collect()
    }

    /// Default solver for a request: `gkl` for the top values; for the
    /// bottom ones `full-bidiag` up to [`FULL_BIDIAG_CUTOFF`], else `gram`.
    pub fn default_for(which: Which, m: usize, n: usize) -> &'static str {
        match which {
            Which::Top => "gkl",
            Which::Bottom if m.min(n) <= FULL_BIDIAG_CUTOFF => "full-bidiag",
            Which::Bottom => "gram",
        }
    }

    /// `k` singular values of `op` (with squares as eigenvalues of `op opᵀ`).
    ///
    /// `rows_total` is the side length of the Laplacian `op opᵀ` represents;
    /// for `Top`, values beyond the operator's rank are reported as exact
    /// zeros up to `min(k, rows_total)`.
    pub fn spectrum(
        &self,
        name: &str,
        op: &dyn LinearOperator,
        k: usize,
        which: Which,
        seed: u64,
    ) -> Result<SpectrumResult, SpectralError> {
        if k == 0 {
            return Err(SpectralError::InvalidCount);
        }
        let solver = self.get(name)?;
        let (m, n) = (op.nrows(), op.ncols());
        let complete = which == Which::Bottom;
        let raw = if m.min(n) == 0 {
            RawSpectrum {
                values: Vec::new(),
                residuals: Vec::new(),
                iterations: 0,
                complete: true,
            }
        } else {
            solver.singular_values(op, k, complete, seed)?
        };
        let smax = raw.values.first().copied().unwrap_or(0.0);
        let cutoff = rank_cutoff(smax, m, n);
        let conv_tol = (f64::EPSILON.sqrt() * smax).max(cutoff);
        let mut pairs: Vec<(f64, f64)> = raw.values.iter().copied().zip(raw.residuals.iter().copied()).collect();
        match which {
            Which::Top => {
                pairs.truncate(k);
                if raw.complete && pairs.len() < k.min(m) {
                    pairs.resize(k.min(m), (0.0, 0.0));
                }
            }
            Which::Bottom => {
                if !raw.complete {
                    return Err(SpectralError::Incomplete);
                }
                let nonzero: Vec<(f64, f64)> = pairs.into_iter().filter(|p| p.0 > cutoff).collect();
                let start = nonzero.len().saturating_sub(k);
                pairs = nonzero[start..].to_vec();
            }
        }
        let converged = pairs.iter().map(|&(s, r)| raw.complete || r <= conv_tol || s == 0.0).collect();
        Ok(SpectrumResult {
            solver: name.to_string(),
            which,
            k,
            seed,
            eigenvalues: pairs.iter().map(|p| p.0 * p.0).collect(),
            singular_values: pairs.iter().map(|p| p.0).collect(),
            residual_estimates: pairs.iter().map(|p| p.1).collect(),
            converged,
            iterations: raw.iterations,
            cutoff,
        })
    }

    /// Every singular value of `op`, descending.
    pub fn all_singular_values(&self, op: &dyn LinearOperator, seed: u64) -> Result<Vec<f64>, SpectralError> {
        let (m, n) = (op.nrows(), op.ncols());
        if m.min(n) == 0 {
            return Ok(Vec::new());
        }
        let name = Self::default_for(Which::Bottom, m, n);
        let raw = self.get(name)?.singular_values(op, m.min(n), true, seed)?;
        if !raw.complete {
            return Err(SpectralError::Incomplete);
        }
        Ok(raw.values)
    }
}
