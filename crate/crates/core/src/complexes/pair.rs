use super::complex::{Complex, ComplexError};
use crate::nbmatrix::NonBranchingMatrix;

/// A subcomplex `K` of `L`, stored as membership masks over the cells of `L`.
/// `K` inherits the weights of `L`.
#[derive(Debug, Clone)]
pub struct ComplexPair {
    big: Complex,
    member: Vec<Vec<bool>>,
}

impl ComplexPair {
    /// Pair with `K` given by its own cells, matched to `L` by key.
    pub fn new(big: Complex, small: &Complex) -> Result<Self, ComplexError> {
        let mut member: Vec<Vec<bool>> = (0..=big.dim().map_or(0, |d| d))
            .map(|q| vec![false; big.n_cells(q)])
            .collect();
        for q in 0..=small.dim().unwrap_or(0) {
            for c in small.cells(q) {
                let i = big
                    .index_of(q, c)
                    .ok_or_else(|| ComplexError::UnknownCell(c.to_string()))?;
                member[q][i] = true;
            }
        }
        Self::from_mask(big, member)
    }

    pub fn from_mask(big: Complex, mut member: Vec<Vec<bool>>) -> Result<Self, ComplexError> {
        member.resize_with(big.dim().map_or(0, |d| d + 1), Vec::new);
        for (q, m) in member.iter_mut().enumerate() {
            if m.is_empty() {
                m.resize(big.n_cells(q), false);
            }
            if m.len() != big.n_cells(q) {
                return Err(ComplexError::BadBoundary(format!(
                    "membership mask of dimension {q} has length {}, expected {}",
                    m.len(),
                    big.n_cells(q)
                )));
            }
        }
        let pair = Self { big, member };
        pair.check_closed()?;
        Ok(pair)
    }

    /// `K = L`.
    pub fn full(big: Complex) -> Self {
        let member = (0..=big.dim().unwrap_or(0))
            .map(|q| vec![true; big.n_cells(q)])
            .collect();
        Self { big, member }
    }

    fn check_closed(&self) -> Result<(), ComplexError> {
        for q in 1..self.member.len() {
            let b = self.big.boundary_ref(q).expect("boundary present");
            for j in (0..self.member[q].len()).filter(|&j| self.member[q][j]) {
                for &i in b.col(j).0 {
                    if !self.member[q - 1][i] {
                        return Err(ComplexError::NotClosed {
                            cell: self.big.cell(q, j).to_string(),
                            face: self.big.cell(q - 1, i).to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn big(&self) -> &Complex {
        &self.big
    }

    pub fn contains(&self, q: usize, i: usize) -> bool {
        self.member.get(q).is_some_and(|m| m[i])
    }

    pub fn mask(&self, q: usize) -> &[bool] {
        self.member.get(q).map_or(&[], |m| m.as_slice())
    }

    /// `I_q^K`: indices (in `L`) of the q-cells of `K`, ascending.
    pub fn k_indices(&self, q: usize) -> Vec<usize> {
        (0..self.big.n_cells(q)).filter(|&i| self.contains(q, i)).collect()
    }

    /// `I_q^{L,K}`: indices of q-cells of `L` not in `K`, ascending.
    pub fn lk_indices(&self, q: usize) -> Vec<usize> {
        (0..self.big.n_cells(q)).filter(|&i| !self.contains(q, i)).collect()
    }

    pub fn n_k(&self, q: usize) -> usize {
        self.mask(q).iter().filter(|&&m| m).count()
    }

    /// `K` as a complex of its own (cells in `L` order, weights inherited).
    pub fn small(&self) -> Complex {
        let mut small = match self.big.kind() {
            super::ComplexKind::Abstract => {
                let labels = (0..self.member.len())
                    .map(|q| self.k_indices(q).iter().map(|&i| self.big.cell(q, i).to_string()).collect())
                    .collect::<Vec<Vec<String>>>();
                let boundaries = (1..self.member.len())
                    .map(|q| {
                        let rows = self.k_indices(q - 1);
                        let mut map = vec![None; self.big.n_cells(q - 1)];
                        for (k, &i) in rows.iter().enumerate() {
                            map[i] = Some(k);
                        }
                        self.big
                            .boundary_ref(q)
                            .expect("boundary present")
                            .select_columns(&self.k_indices(q))
                            .select_rows(&map, rows.len())
                    })
                    .collect();
                Complex::from_boundaries(labels, boundaries).expect("subcomplex of a valid complex")
            }
            kind => {
                let cells = (0..self.member.len())
                    .map(|q| self.k_indices(q).iter().map(|&i| self.big.cell(q, i).clone()).collect())
                    .collect();
                Complex::from_cells(kind, cells).expect("subcomplex of a valid complex")
            }
        };
        for q in 0..self.member.len() {
            let w: Vec<f64> = self.k_indices(q).iter().map(|&i| self.big.weights(q)[i]).collect();
            if !w.is_empty() {
                small.set_weights(q, w).expect("weights of L are valid");
            }
        }
        small
    }

    /// Same pair with `K` enlarged by every cell of `L` of dimension `< q`.
    pub fn with_lower_skeleton(&self, q: usize) -> Self {
        let mut member = self.member.clone();
        for m in member.iter_mut().take(q) {
            m.iter_mut().for_each(|x| *x = true);
        }
        Self {
            big: self.big.clone(),
            member,
        }
    }

    /// Adds q-cell `i` of `L` to `K`; its faces must already be in `K`.
    pub fn add_cell(&mut self, q: usize, i: usize) -> Result<(), ComplexError> {
        if q > 0 {
            let b = self.big.boundary_ref(q).expect("boundary present");
            for &f in b.col(i).0 {
                if !self.member[q - 1][f] {
                    return Err(ComplexError::FaceMissing {
                        cell: self.big.cell(q, i).to_string(),
                        face: self.big.cell(q - 1, f).to_string(),
                    });
                }
            }
        }
        self.member[q][i] = true;
        Ok(())
    }
}

/// Rows of `B_{q+1}^L` for the q-cells of `L` outside `K`, all columns kept.
pub fn extract_d(pair: &ComplexPair, q: usize) -> Result<NonBranchingMatrix, ComplexError> {
    let rows = pair.lk_indices(q);
    let l = pair.big().n_cells(q + 1);
    up_rows(pair.big(), q, &rows, l)
}

/// `B_{q+1}^L` restricted to the given q-cell rows as a non-branching matrix.
pub(crate) fn up_rows(
    big: &Complex,
    q: usize,
    rows: &[usize],
    n_cols: usize,
) -> Result<NonBranchingMatrix, ComplexError> {
    let Some(b) = big.boundary_ref(q + 1) else {
        return Ok(NonBranchingMatrix::zeros(rows.len(), n_cols));
    };
    let mut map = vec![None; b.n_rows()];
    for (k, &i) in rows.iter().enumerate() {
        map[i] = Some(k);
    }
    let mut triplets = Vec::new();
    let mut count = vec![0usize; rows.len()];
    for (i, j, v) in b.triplets() {
        if let Some(k) = map[i] {
            count[k] += 1;
            if count[k] > 2 {
                let cofaces = b.row_counts()[i];
                return Err(ComplexError::NotNonBranching {
                    q,
                    cell: big.cell(q, i).to_string(),
                    cofaces,
                });
            }
            triplets.push((k, j, v as i64));
        }
    }
    NonBranchingMatrix::from_triplets(rows.len(), n_cols, &triplets)
        .map_err(|e| ComplexError::BadBoundary(e.to_string()))
}

/// The q-cells of `L \ K` in insertion order for a cell-wise filtration from
/// `K` to `L`: by `values` (ties broken by cell order) when given, else by
/// cell order.
pub fn cube_filtration(
    pair: &ComplexPair,
    q: usize,
    values: Option<&[f64]>,
) -> Result<Vec<usize>, ComplexError> {
    let big = pair.big();
    let mut steps = pair.lk_indices(q);
    if let (Some(b), true) = (big.boundary_ref(q), q > 0) {
        for &j in &steps {
            for &f in b.col(j).0 {
                if !pair.contains(q - 1, f) {
                    return Err(ComplexError::FaceMissing {
                        cell: big.cell(q, j).to_string(),
                        face: big.cell(q - 1, f).to_string(),
                    });
                }
            }
        }
    }
    if let Some(v) = values {
        steps.sort_by(|&a, &b| v[a].total_cmp(&v[b]).then(a.cmp(&b)));
    }
    Ok(steps)
}
