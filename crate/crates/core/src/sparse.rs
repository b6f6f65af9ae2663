//! Compressed sparse-column matrices for boundary maps and factors.

use nalgebra::DMatrix;

#[derive(Debug, Clone, PartialEq)]
pub struct CscMatrix<T> {
    n_rows: usize,
    n_cols: usize,
    col_ptr: Vec<usize>,
    row_idx: Vec<usize>,
    values: Vec<T>,
}

impl<T: Copy + PartialEq + Default> CscMatrix<T> {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Self {
            n_rows,
            n_cols,
            col_ptr: vec![0; n_cols + 1],
            row_idx: Vec::new(),
            values: Vec::new(),
        }
    }

    /// Builds from per-column `(row, value)` lists; rows are sorted and zero
    /// values dropped. Panics on a row out of range or a repeated row.
    pub fn from_columns(n_rows: usize, columns: Vec<Vec<(usize, T)>>) -> Self {
        let n_cols = columns.len();
        let mut col_ptr = Vec::with_capacity(n_cols + 1);
        let mut row_idx = Vec::new();
        let mut values = Vec::new();
        col_ptr.push(0);
        for mut col in columns {
            col.sort_unstable_by_key(|e| e.0);
            for w in col.windows(2) {
                assert!(w[0].0 != w[1].0, "repeated row {} in a column", w[0].0);
            }
            for (r, v) in col {
                assert!(r < n_rows, "row {r} out of range");
                if v != T::default() {
                    row_idx.push(r);
                    values.push(v);
                }
            }
            col_ptr.push(row_idx.len());
        }
        Self {
            n_rows,
            n_cols,
            col_ptr,
            row_idx,
            values,
        }
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn col(&self, j: usize) -> (&[usize], &[T]) {
        let (a, b) = (self.col_ptr[j], self.col_ptr[j + 1]);
        (&self.row_idx[a..b], &self.values[a..b])
    }

    pub fn col_entries(&self, j: usize) -> Vec<(usize, T)> {
        let (r, v) = self.col(j);
        r.iter().copied().zip(v.iter().copied()).collect()
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        let (r, v) = self.col(j);
        r.binary_search(&i).map_or(T::default(), |p| v[p])
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, T)> + '_ {
        (0..self.n_cols).flat_map(move |j| {
            let (r, v) = self.col(j);
            r.iter().zip(v).map(move |(&i, &x)| (i, j, x))
        })
    }

    pub fn transpose(&self) -> Self {
        let mut columns: Vec<Vec<(usize, T)>> = vec![Vec::new(); self.n_rows];
        for (i, j, v) in self.triplets() {
            columns[i].push((j, v));
        }
        Self::from_columns(self.n_cols, columns)
    }

    /// Keeps the rows with `map[i] = Some(new_index)`, renumbered.
    pub fn select_rows(&self, map: &[Option<usize>], n_new: usize) -> Self {
        let columns = (0..self.n_cols)
            .map(|j| {
                let (r, v) = self.col(j);
                r.iter()
                    .zip(v)
                    .filter_map(|(&i, &x)| map[i].map(|k| (k, x)))
                    .collect()
            })
            .collect();
        Self::from_columns(n_new, columns)
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let columns = cols.iter().map(|&j| self.col_entries(j)).collect();
        Self::from_columns(self.n_rows, columns)
    }

    pub fn map<U: Copy + PartialEq + Default>(&self, f: impl Fn(usize, usize, T) -> U) -> CscMatrix<U> {
        let columns = (0..self.n_cols)
            .map(|j| {
                let (r, v) = self.col(j);
                r.iter().zip(v).map(|(&i, &x)| (i, f(i, j, x))).collect()
            })
            .collect();
        CscMatrix::from_columns(self.n_rows, columns)
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.n_rows, other.n_rows, "row counts differ");
        let columns = (0..self.n_cols)
            .map(|j| self.col_entries(j))
            .chain((0..other.n_cols).map(|j| other.col_entries(j)))
            .collect();
        Self::from_columns(self.n_rows, columns)
    }

    /// Number of stored entries per row.
    pub fn row_counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.n_rows];
        for &i in &self.row_idx {
            c[i] += 1;
        }
        c
    }
}

impl CscMatrix<i32> {
    pub fn to_f64(&self) -> CscMatrix<f64> {
        self.map(|_, _, v| v as f64)
    }

    pub fn to_dense_i64(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0i64; self.n_cols]; self.n_rows];
        for (i, j, v) in self.triplets() {
            out[i][j] = v as i64;
        }
        out
    }

    /// Exact product, used for the `∂∂ = 0` check.
    pub fn mul_is_zero(&self, rhs: &Self) -> bool {
        assert_eq!(self.n_cols, rhs.n_rows);
        let mut acc = vec![0i64; self.n_rows];
        for j in 0..rhs.n_cols {
            let (rk, vk) = rhs.col(j);
            for (&k, &b) in rk.iter().zip(vk) {
                let (ri, vi) = self.col(k);
                for (&i, &a) in ri.iter().zip(vi) {
                    acc[i] += a as i64 * b as i64;
                }
            }
            let mut zero = true;
            for &k in rk {
                for &i in self.col(k).0 {
                    zero &= acc[i] == 0;
                    acc[i] = 0;
                }
            }
            if !zero {
                return false;
            }
        }
        true
    }
}

impl CscMatrix<f64> {
    /// `y = A x`.
    pub fn mul_vec(&self, x: &[f64], y: &mut [f64]) {
        y.iter_mut().for_each(|v| *v = 0.0);
        for (j, &xj) in x.iter().enumerate() {
            if xj == 0.0 {
                continue;
            }
            let (r, v) = self.col(j);
            for (&i, &a) in r.iter().zip(v) {
                y[i] += a * xj;
            }
        }
    }

    /// `y = Aᵀ x`.
    pub fn tr_mul_vec(&self, x: &[f64], y: &mut [f64]) {
        for (j, yj) in y.iter_mut().enumerate() {
            let (r, v) = self.col(j);
            *yj = r.iter().zip(v).map(|(&i, &a)| a * x[i]).sum();
        }
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut d = DMatrix::zeros(self.n_rows, self.n_cols);
        for (i, j, v) in self.triplets() {
            d[(i, j)] = v;
        }
        d
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}
