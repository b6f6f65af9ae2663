//! Golub–Kahan–Lanczos bidiagonalization.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::bidiag::Bidiagonal;
use super::operator::LinearOperator;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GklOptions {
    /// Full reorthogonalization of both Lanczos bases (classical
    /// Gram–Schmidt, applied twice). With it on, a breakdown restarts from a
    /// fresh random vector orthogonal to the basis; with it off, the
    /// iteration stops at the breakdown.
    pub reorthogonalize: bool,
}

impl Default for GklOptions {
    fn default() -> Self {
        Self {
            reorthogonalize: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct GklOutput {
    /// `B_k`, with `k = steps`.
    pub bidiagonal: Bidiagonal,
    /// Left Lanczos vectors `u_1..u_k`.
    pub u: Vec<Vec<f64>>,
    /// Right Lanczos vectors `v_1..v_k`.
    pub v: Vec<Vec<f64>>,
    /// `β_k`, the coupling to the next (not stored) right vector.
    pub beta_next: f64,
    pub steps: usize,
    /// Whether the iteration stopped early at a breakdown.
    pub stopped_early: bool,
    /// Breakdowns bridged by a restart vector.
    pub restarts: usize,
    /// Threshold below which `α_j` or `β_j` counts as a breakdown.
    pub breakdown_tol: f64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

fn orthogonalize(w: &mut [f64], basis: &[Vec<f64>]) {
    for _ in 0..2 {
        let coef: Vec<f64> = basis.iter().map(|b| dot(b, w)).collect();
        for (b, c) in basis.iter().zip(coef) {
            axpy(-c, b, w);
        }
    }
}

fn random_unit(rng: &mut ChaCha8Rng, len: usize, basis: &[Vec<f64>]) -> Option<Vec<f64>> {
    for _ in 0..8 {
        let mut w: Vec<f64> = (0..len).map(|_| rng.gen_range(-1.0..1.0)).collect();
        orthogonalize(&mut w, basis);
        let nw = norm(&w);
        if nw > 1e-8 {
            w.iter_mut().for_each(|x| *x /= nw);
            return Some(w);
        }
    }
    None
}

/// Runs `k` steps of `α_j u_j = A v_j − β_{j−1} u_{j−1}`,
/// `β_j v_{j+1} = Aᵀ u_j − α_j v_j` from a seeded random unit `v_1`.
///
/// `k` is clamped to `min(m, n)`. When `m < n` the final `B_k` does not carry
/// all singular values of `A`; callers wanting the whole spectrum pass the
/// operator with more rows than columns.
pub fn gkl_bidiagonalize(op: &dyn LinearOperator, k: usize, seed: u64, opts: GklOptions) -> GklOutput {
    let (m, n) = (op.nrows(), op.ncols());
    let k = k.min(m).min(n);
    let tol = (m.max(n) as f64) * f64::EPSILON * op.norm_bound();
    let mut out = GklOutput {
        bidiagonal: Bidiagonal::new(Vec::new(), Vec::new()),
        u: Vec::with_capacity(k),
        v: Vec::with_capacity(k),
        beta_next: 0.0,
        steps: 0,
        stopped_early: false,
        restarts: 0,
        breakdown_tol: tol,
    };
    if k == 0 {
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v1 = random_unit(&mut rng, n, &[]).expect("n >= 1");
    out.v.push(v1);
    let mut alphas = Vec::with_capacity(k);
    let mut betas: Vec<f64> = Vec::with_capacity(k);
    let mut u = vec![0.0; m];
    let mut w = vec![0.0; n];
    for j in 0..k {
        op.apply(&out.v[j], &mut u);
        if j > 0 {
            axpy(-betas[j - 1], &out.u[j - 1], &mut u);
        }
        if opts.reorthogonalize {
            orthogonalize(&mut u, &out.u);
        }
        let mut alpha = norm(&u);
        if alpha <= tol {
            if !opts.reorthogonalize {
                out.stopped_early = true;
                out.v.truncate(j);
                out.beta_next = betas.last().copied().unwrap_or(0.0);
                break;
            }
            alpha = 0.0;
            u = random_unit(&mut rng, m, &out.u).expect("left basis incomplete");
            out.restarts += 1;
        } else {
            u.iter_mut().for_each(|x| *x /= alpha);
        }
        out.u.push(u.clone());
        alphas.push(alpha);
        out.steps = j + 1;

        op.apply_t(&out.u[j], &mut w);
        axpy(-alpha, &out.v[j], &mut w);
        if opts.reorthogonalize {
            orthogonalize(&mut w, &out.v);
        }
        let mut beta = norm(&w);
        if j + 1 == k {
            out.beta_next = beta;
            break;
        }
        if beta <= tol {
            if !opts.reorthogonalize {
                out.stopped_early = true;
                out.beta_next = 0.0;
                break;
            }
            beta = 0.0;
            w = random_unit(&mut rng, n, &out.v).expect("right basis incomplete");
            out.restarts += 1;
        } else {
            w.iter_mut().for_each(|x| *x /= beta);
        }
        betas.push(beta);
        out.v.push(w.clone());
    }
    betas.truncate(alphas.len().saturating_sub(1));
    out.bidiagonal = Bidiagonal::new(alphas, betas);
    out
}
