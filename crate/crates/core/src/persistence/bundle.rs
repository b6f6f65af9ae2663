use std::collections::HashMap;
use std::fmt::Write as _;

use nalgebra::DMatrix;

use super::sum::ExactSum;
use super::PersistenceError;
use crate::complexes::{up_rows, Complex, ComplexError, ComplexKind, ComplexPair};
use crate::format::fmt_f64;
use crate::nbmatrix::{rank, weak_reduce, ComponentKind};
use crate::sparse::CscMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnKind {
    /// One regulable component of `D`, summed with its orientation flags.
    Component,
    /// A (q+1)-cell with no face outside `K`.
    Cell,
}

/// Provenance of one column of `B_LK`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BundleColumn {
    pub kind: ColumnKind,
    /// Largest (q+1)-cell index of the component, or the cell itself.
    pub representative: usize,
    /// Number of (q+1)-cells in the column.
    pub volume: usize,
}

/// Factors of the up persistent Laplacian of a pair `K ⊆ L` in dimension `q`:
/// `Δ = B_LK W_LK B_LKᵀ (W_q^K)⁻¹` and its symmetrized square root `M`.
#[derive(Debug, Clone, PartialEq)]
pub struct UpLaplacianBundle {
    pub q: usize,
    pub kind: ComplexKind,
    /// q-cells of `K` as indices into `L`; they index the rows.
    pub k_cells: Vec<usize>,
    /// Regulable components (by representative) then single cells (ascending).
    pub b_lk: CscMatrix<i32>,
    pub w_lk: Vec<f64>,
    /// Weights of the q-cells of `K`.
    pub w_q: Vec<f64>,
    pub columns: Vec<BundleColumn>,
    /// `(W_q^K)^{-1/2} B_LK (W_LK)^{1/2}`.
    pub m: CscMatrix<f64>,
    pub delta: Option<DMatrix<f64>>,
    /// Unit weights on the q- and (q+1)-cells of `L`.
    pub unweighted: bool,
    /// `B_{q+1}^L` has full column rank (exact).
    pub l_full_column_rank: bool,
}

/// One column before assembly: entries by q-cell index of `L`.
pub(crate) struct ColumnSpec {
    pub info: BundleColumn,
    pub entries: Vec<(usize, i32)>,
    pub weight: f64,
}

/// Shared per-pair data for assembling bundles.
pub(crate) struct Frame<'a> {
    pub big: &'a Complex,
    pub q: usize,
    pub l_full_column_rank: bool,
}

impl<'a> Frame<'a> {
    pub fn new(big: &'a Complex, q: usize) -> Result<Self, PersistenceError> {
        if let Some((i, cofaces)) = big.first_branching_cell(q) {
            return Err(ComplexError::NotNonBranching {
                q,
                cell: big.cell(q, i).to_string(),
                cofaces,
            }
            .into());
        }
        let n_cols = big.n_cells(q + 1);
        let all: Vec<usize> = (0..big.n_cells(q)).collect();
        let up = up_rows(big, q, &all, n_cols)?;
        Ok(Self {
            big,
            q,
            l_full_column_rank: rank(&up) == n_cols,
        })
    }

    pub fn column_entries(&self, c: usize) -> Vec<(usize, i32)> {
        self.big
            .boundary_ref(self.q + 1)
            .map_or_else(Vec::new, |b| b.col_entries(c))
    }

    pub fn assemble(&self, k_cells: Vec<usize>, specs: Vec<ColumnSpec>, materialize: bool) -> UpLaplacianBundle {
        let big = self.big;
        let q = self.q;
        let mut row_of = HashMap::with_capacity(k_cells.len());
        for (k, &i) in k_cells.iter().enumerate() {
            row_of.insert(i, k);
        }
        let wq_all = big.weights(q);
        let w_q: Vec<f64> = k_cells.iter().map(|&i| wq_all[i]).collect();
        let mut columns = Vec::with_capacity(specs.len());
        let mut w_lk = Vec::with_capacity(specs.len());
        let mut cols = Vec::with_capacity(specs.len());
        for s in specs {
            let col = s
                .entries
                .into_iter()
                .filter(|e| e.1 != 0)
                .map(|(i, v)| (*row_of.get(&i).expect("column entry outside K"), v))
                .collect();
            cols.push(col);
            columns.push(s.info);
            w_lk.push(s.weight);
        }
        let b_lk = CscMatrix::from_columns(k_cells.len(), cols);
        let m = symmetrized_factor(&b_lk, &w_q, &w_lk);
        let mut bundle = UpLaplacianBundle {
            q,
            kind: big.kind(),
            k_cells,
            b_lk,
            w_lk,
            w_q,
            columns,
            m,
            delta: None,
            unweighted: big.is_unweighted(q) && big.is_unweighted(q + 1),
            l_full_column_rank: self.l_full_column_rank,
        };
        if materialize {
            bundle.delta = Some(bundle.assemble_delta());
        }
        bundle
    }
}

fn symmetrized_factor(b: &CscMatrix<i32>, w_q: &[f64], w_lk: &[f64]) -> CscMatrix<f64> {
    let rq: Vec<f64> = w_q.iter().map(|w| 1.0 / w.sqrt()).collect();
    let rl: Vec<f64> = w_lk.iter().map(|w| w.sqrt()).collect();
    b.map(|i, j, v| v as f64 * rq[i] * rl[j])
}

/// Up persistent Laplacian factors of `K ⊆ L` in dimension `q`, from a weak
/// reduction of `D = B_{q+1}^L(I_q^{L,K}, :)`.
pub fn up_bundle(pair: &ComplexPair, q: usize, materialize_delta: bool) -> Result<UpLaplacianBundle, PersistenceError> {
    let big = pair.big();
    let frame = Frame::new(big, q)?;
    let k_cells = pair.k_indices(q);
    let lk = pair.lk_indices(q);
    let n_cols = big.n_cells(q + 1);
    let w1 = big.weights(q + 1);
    let mut specs = Vec::new();
    let mut zero_cols: Vec<usize> = (0..n_cols).collect();
    if !lk.is_empty() {
        let d = up_rows(big, q, &lk, n_cols)?;
        let red = weak_reduce(&d);
        let mut regs: Vec<_> = red.partition.regulable().collect();
        regs.sort_by_key(|c| c.representative());
        for comp in regs {
            let mut acc: HashMap<usize, i32> = HashMap::new();
            for &c in &comp.cols {
                let e = red.e[c] as i32;
                for (i, v) in frame.column_entries(c) {
                    *acc.entry(i).or_insert(0) += e * v;
                }
            }
            let s: ExactSum = comp.cols.iter().map(|&c| 1.0 / w1[c]).collect();
            specs.push(ColumnSpec {
                info: BundleColumn {
                    kind: ColumnKind::Component,
                    representative: comp.representative(),
                    volume: comp.cols.len(),
                },
                entries: acc.into_iter().collect(),
                weight: 1.0 / s.value(),
            });
        }
        zero_cols = red
            .partition
            .components
            .iter()
            .filter(|c| c.kind == ComponentKind::ZeroColumn)
            .map(|c| c.cols[0])
            .collect();
        zero_cols.sort_unstable();
    }
    for c in zero_cols {
        specs.push(ColumnSpec {
            info: BundleColumn {
                kind: ColumnKind::Cell,
                representative: c,
                volume: 1,
            },
            entries: frame.column_entries(c),
            weight: w1[c],
        });
    }
    Ok(frame.assemble(k_cells, specs, materialize_delta))
}

impl UpLaplacianBundle {
    pub fn n_k(&self) -> usize {
        self.k_cells.len()
    }

    pub fn n_columns(&self) -> usize {
        self.columns.len()
    }

    /// `s_j = 1 / W_LK(j, j)` for the component columns.
    pub fn s_values(&self) -> Vec<f64> {
        self.columns
            .iter()
            .zip(&self.w_lk)
            .filter(|(c, _)| c.kind == ColumnKind::Component)
            .map(|(_, w)| 1.0 / w)
            .collect()
    }

    /// Dense `B_LK W_LK B_LKᵀ (W_q^K)⁻¹`.
    pub fn assemble_delta(&self) -> DMatrix<f64> {
        let n = self.n_k();
        let b = self.b_lk.to_f64().to_dense();
        let bw = DMatrix::from_fn(n, self.n_columns(), |i, j| b[(i, j)] * self.w_lk[j]);
        let mut d = bw * b.transpose();
        for j in 0..n {
            let s = 1.0 / self.w_q[j];
            d.column_mut(j).iter_mut().for_each(|x| *x *= s);
        }
        d
    }

    /// `B_LK` as `triplet v1 int rows cols nnz` text.
    pub fn b_lk_text(&self) -> String {
        let mut out = format!(
            "triplet v1 int {} {} {}\n",
            self.b_lk.n_rows(),
            self.b_lk.n_cols(),
            self.b_lk.nnz()
        );
        for (i, j, v) in self.b_lk.triplets() {
            let _ = writeln!(out, "{i} {j} {v}");
        }
        out
    }

    /// `M` as `triplet v1 real rows cols nnz` text.
    pub fn m_text(&self) -> String {
        let mut out = format!(
            "triplet v1 real {} {} {}\n",
            self.m.n_rows(),
            self.m.n_cols(),
            self.m.nnz()
        );
        for (i, j, v) in self.m.triplets() {
            let _ = writeln!(out, "{i} {j} {}", fmt_f64(v));
        }
        out
    }

    /// `W_LK` as `diag v1 n` text.
    pub fn w_lk_text(&self) -> String {
        let mut out = format!("diag v1 {}\n", self.w_lk.len());
        for &w in &self.w_lk {
            let _ = writeln!(out, "{}", fmt_f64(w));
        }
        out
    }

    /// The materialized `Δ` as CSV, if present.
    pub fn delta_csv(&self) -> Option<String> {
        let d = self.delta.as_ref()?;
        let mut out = String::new();
        for i in 0..d.nrows() {
            let row: Vec<String> = (0..d.ncols()).map(|j| fmt_f64(d[(i, j)])).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        Some(out)
    }
}
