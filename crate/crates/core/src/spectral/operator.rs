use nalgebra::DMatrix;

use crate::sparse::CscMatrix;

/// A real `m × n` matrix available through products with it and its transpose.
pub trait LinearOperator: Sync {
    fn nrows(&self) -> usize;
    fn ncols(&self) -> usize;
    /// `y = A x`
    fn apply(&self, x: &[f64], y: &mut [f64]);
    /// `y = Aᵀ x`
    fn apply_t(&self, x: &[f64], y: &mut [f64]);
    /// Any upper bound of the spectral norm, used to scale thresholds.
    fn norm_bound(&self) -> f64;
}

impl LinearOperator for CscMatrix<f64> {
    fn nrows(&self) -> usize {
        self.n_rows()
    }
    fn ncols(&self) -> usize {
        self.n_cols()
    }
    fn apply(&self, x: &[f64], y: &mut [f64]) {
        self.mul_vec(x, y)
    }
    fn apply_t(&self, x: &[f64], y: &mut [f64]) {
        self.tr_mul_vec(x, y)
    }
    fn norm_bound(&self) -> f64 {
        self.frobenius_norm()
    }
}

impl LinearOperator for DMatrix<f64> {
    fn nrows(&self) -> usize {
        self.nrows()
    }
    fn ncols(&self) -> usize {
        self.ncols()
    }
    fn apply(&self, x: &[f64], y: &mut [f64]) {
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = (0..self.ncols()).map(|j| self[(i, j)] * x[j]).sum();
        }
    }
    fn apply_t(&self, x: &[f64], y: &mut [f64]) {
        for (j, yj) in y.iter_mut().enumerate() {
            *yj = self.column(j).iter().zip(x).map(|(a, b)| a * b).sum();
        }
    }
    fn norm_bound(&self) -> f64 {
        self.norm()
    }
}

/// `Aᵀ` as an operator.
pub struct Transposed<'a>(pub &'a dyn LinearOperator);

impl LinearOperator for Transposed<'_> {
    fn nrows(&self) -> usize {
        self.0.ncols()
    }
    fn ncols(&self) -> usize {
        self.0.nrows()
    }
    fn apply(&self, x: &[f64], y: &mut [f64]) {
        self.0.apply_t(x, y)
    }
    fn apply_t(&self, x: &[f64], y: &mut [f64]) {
        self.0.apply(x, y)
    }
    fn norm_bound(&self) -> f64 {
        self.0.norm_bound()
    }
}

/// Operator given by two closures.
pub struct FnOperator<F, G> {
    pub m: usize,
    pub n: usize,
    pub apply: F,
    pub apply_t: G,
    pub norm: f64,
}

impl<F, G> LinearOperator for FnOperator<F, G>
where
    F: Fn(&[f64], &mut [f64]) + Sync,
    G: Fn(&[f64], &mut [f64]) + Sync,
{
    fn nrows(&self) -> usize {
        self.m
    }
    fn ncols(&self) -> usize {
        self.n
    }
    fn apply(&self, x: &[f64], y: &mut [f64]) {
        (self.apply)(x, y)
    }
    fn apply_t(&self, x: &[f64], y: &mut [f64]) {
        (self.apply_t)(x, y)
    }
    fn norm_bound(&self) -> f64 {
        self.norm
    }
}
