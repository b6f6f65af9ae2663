use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("row {row} violates the non-branching pattern: {reason}")]
    NonBranchingViolation { row: usize, reason: String },
    #[error("duplicate entry at ({row}, {col})")]
    DuplicateEntry { row: usize, col: usize },
    #[error("entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    OutOfBounds {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
}

/// Sparse matrix with entries in {-1, 0, 1} and at most two nonzeros per row,
/// stored in compressed sparse-row layout with sorted column indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NonBranchingMatrix {
    n_rows: usize,
    n_cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    val: Vec<i8>,
}

impl NonBranchingMatrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Self {
            n_rows,
            n_cols,
            row_ptr: vec![0; n_rows + 1],
            col_idx: Vec::new(),
            val: Vec::new(),
        }
    }

    /// Builds the canonical layout from `(row, col, value)` triplets in any order.
    pub fn from_triplets(
        n_rows: usize,
        n_cols: usize,
        triplets: &[(usize, usize, i64)],
    ) -> Result<Self, MatrixError> {
        let mut per_row: Vec<[(usize, i8); 2]> = vec![[(0, 0); 2]; n_rows];
        let mut count = vec![0u8; n_rows];
        for &(row, col, value) in triplets {
            if row >= n_rows || col >= n_cols {
                return Err(MatrixError::OutOfBounds {
                    row,
                    col,
                    rows: n_rows,
                    cols: n_cols,
                });
            }
            if value != 1 && value != -1 {
                return Err(MatrixError::NonBranchingViolation {
                    row,
                    reason: format!("value {value} at column {col} is not ±1"),
                });
            }
            let c = count[row] as usize;
            if per_row[row][..c].iter().any(|&(j, _)| j == col) {
                return Err(MatrixError::DuplicateEntry { row, col });
            }
            if c == 2 {
                return Err(MatrixError::NonBranchingViolation {
                    row,
                    reason: "more than two nonzeros".into(),
                });
            }
            per_row[row][c] = (col, value as i8);
            count[row] += 1;
        }
        let mut row_ptr = Vec::with_capacity(n_rows + 1);
        let mut col_idx = Vec::with_capacity(triplets.len());
        let mut val = Vec::with_capacity(triplets.len());
        row_ptr.push(0);
        for (entries, &c) in per_row.iter_mut().zip(&count) {
            let entries = &mut entries[..c as usize];
            entries.sort_unstable_by_key(|e| e.0);
            for &(j, v) in entries.iter() {
                col_idx.push(j);
                val.push(v);
            }
            row_ptr.push(col_idx.len());
        }
        Ok(Self {
            n_rows,
            n_cols,
            row_ptr,
            col_idx,
            val,
        })
    }

    /// Builds from rows given as sparse `(col, value)` lists.
    pub fn from_rows(n_cols: usize, rows: &[Vec<(usize, i64)>]) -> Result<Self, MatrixError> {
        let triplets: Vec<_> = rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |&(j, v)| (i, j, v)))
            .collect();
        Self::from_triplets(rows.len(), n_cols, &triplets)
    }

    /// Builds from a dense row-major description. Panics on ragged rows.
    pub fn from_dense(rows: &[Vec<i64>]) -> Result<Self, MatrixError> {
        let n_cols = rows.first().map_or(0, |r| r.len());
        let mut triplets = Vec::new();
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), n_cols, "ragged dense input");
            for (j, &v) in r.iter().enumerate() {
                if v != 0 {
                    triplets.push((i, j, v));
                }
            }
        }
        Self::from_triplets(rows.len(), n_cols, &triplets)
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn nnz(&self) -> usize {
        self.col_idx.len()
    }

    pub fn row_ptr(&self) -> &[usize] {
        &self.row_ptr
    }

    pub fn col_idx(&self) -> &[usize] {
        &self.col_idx
    }

    pub fn values(&self) -> &[i8] {
        &self.val
    }

    /// Column indices and values of row `i`.
    pub fn row(&self, i: usize) -> (&[usize], &[i8]) {
        let (a, b) = (self.row_ptr[i], self.row_ptr[i + 1]);
        (&self.col_idx[a..b], &self.val[a..b])
    }

    pub fn row_nnz(&self, i: usize) -> usize {
        self.row_ptr[i + 1] - self.row_ptr[i]
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        let (cols, vals) = self.row(i);
        cols.iter()
            .position(|&c| c == j)
            .map_or(0, |p| vals[p])
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, i8)> + '_ {
        (0..self.n_rows).flat_map(move |i| {
            let (cols, vals) = self.row(i);
            cols.iter().zip(vals).map(move |(&j, &v)| (i, j, v))
        })
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0i64; self.n_cols]; self.n_rows];
        for (i, j, v) in self.triplets() {
            out[i][j] = v as i64;
        }
        out
    }

    /// Number of stored entries per column.
    pub fn column_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n_cols];
        for &j in &self.col_idx {
            counts[j] += 1;
        }
        counts
    }

    /// Submatrix made of the given rows, in the given order, keeping all columns.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut row_ptr = Vec::with_capacity(rows.len() + 1);
        let mut col_idx = Vec::new();
        let mut val = Vec::new();
        row_ptr.push(0);
        for &i in rows {
            let (c, v) = self.row(i);
            col_idx.extend_from_slice(c);
            val.extend_from_slice(v);
            row_ptr.push(col_idx.len());
        }
        Self {
            n_rows: rows.len(),
            n_cols: self.n_cols,
            row_ptr,
            col_idx,
            val,
        }
    }

    /// Scales column `j` by `signs[j]`.
    pub fn scale_columns(&self, signs: &[i8]) -> Self {
        let mut out = self.clone();
        for (v, &j) in out.val.iter_mut().zip(&self.col_idx) {
            *v *= signs[j];
        }
        out
    }

    /// Drops every stored entry whose column is flagged in `zero`.
    pub fn zero_columns(&self, zero: &[bool]) -> Self {
        self.scale_and_zero_columns(&[], zero)
    }

    /// `scale_columns(signs)` followed by `zero_columns(zero)` in one pass;
    /// an empty `signs` leaves values unchanged.
    pub fn scale_and_zero_columns(&self, signs: &[i8], zero: &[bool]) -> Self {
        let mut row_ptr = Vec::with_capacity(self.n_rows + 1);
        let mut col_idx = Vec::with_capacity(self.nnz());
        let mut val = Vec::with_capacity(self.nnz());
        row_ptr.push(0);
        for i in 0..self.n_rows {
            let (c, v) = self.row(i);
            for (&j, &x) in c.iter().zip(v) {
                if !zero[j] {
                    col_idx.push(j);
                    val.push(if signs.is_empty() { x } else { x * signs[j] });
                }
            }
            row_ptr.push(col_idx.len());
        }
        Self {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            row_ptr,
            col_idx,
            val,
        }
    }

    /// `D x` in exact integer arithmetic.
    pub fn mul_vec_i64(&self, x: &[i64]) -> Vec<i64> {
        assert_eq!(x.len(), self.n_cols);
        (0..self.n_rows)
            .map(|i| {
                let (c, v) = self.row(i);
                c.iter().zip(v).map(|(&j, &a)| a as i64 * x[j]).sum()
            })
            .collect()
    }
}
