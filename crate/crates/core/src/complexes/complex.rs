use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use super::cell::{CellKey, Cube};
use crate::sparse::CscMatrix;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ComplexError {
    #[error("dimension {q} is out of range")]
    DimensionOutOfRange { q: usize },
    #[error("weight {value} of cell {cell} in dimension {q} is not positive")]
    NonPositiveWeight { q: usize, cell: usize, value: f64 },
    #[error("dimension {q} has {cells} cells but {weights} weights")]
    WeightLength { q: usize, cells: usize, weights: usize },
    #[error("face {face} of cell {cell} is missing")]
    NotClosed { cell: String, face: String },
    #[error("cell {0} is not in the larger complex")]
    UnknownCell(String),
    #[error("cell {cell} has {cofaces} cofaces; dimension {q} is not non-branching")]
    NotNonBranching { q: usize, cell: String, cofaces: usize },
    #[error("face {face} of {cell} lies outside the subcomplex")]
    FaceMissing { cell: String, face: String },
    #[error("invalid cell {0}")]
    InvalidCell(String),
    #[error("boundary maps are inconsistent: {0}")]
    BadBoundary(String),
    #[error("cells of mixed kinds in one complex")]
    MixedKinds,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComplexKind {
    Simplicial,
    Cubical,
    Abstract,
}

impl ComplexKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ComplexKind::Simplicial => "simplicial",
            ComplexKind::Cubical => "cubical",
            ComplexKind::Abstract => "abstract",
        }
    }
}

/// A finite weighted cell complex with cells ordered per dimension.
#[derive(Debug, Clone)]
pub struct Complex {
    kind: ComplexKind,
    cells: Vec<Vec<CellKey>>,
    index: Vec<HashMap<CellKey, usize>>,
    // boundary[q] maps q-cells to (q-1)-cells; boundary[0] is unused
    boundary: Vec<CscMatrix<i32>>,
    weights: Vec<Vec<f64>>,
}

impl Complex {
    pub fn empty(kind: ComplexKind) -> Self {
        Self {
            kind,
            cells: Vec::new(),
            index: Vec::new(),
            boundary: Vec::new(),
            weights: Vec::new(),
        }
    }

    /// Closure of the given simplices (vertex lists in any order).
    pub fn simplicial<I>(simplices: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = Vec<u32>>,
    {
        let mut sets: Vec<BTreeSet<CellKey>> = Vec::new();
        for s in simplices {
            let mut v = s.clone();
            v.sort_unstable();
            v.dedup();
            if v.len() != s.len() || v.is_empty() {
                return Err(ComplexError::InvalidCell(format!("{s:?}")));
            }
            let n = v.len();
            for mask in 1u64..(1u64 << n) {
                let face: Vec<u32> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| v[i]).collect();
                let d = face.len() - 1;
                if sets.len() <= d {
                    sets.resize_with(d + 1, BTreeSet::new);
                }
                sets[d].insert(CellKey::Simplex(face));
            }
        }
        Self::from_sorted_cells(ComplexKind::Simplicial, sets.into_iter().map(Vec::from_iter).collect())
    }

    /// Closure of the given cubes.
    pub fn cubical<I>(cubes: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = Cube>,
    {
        let mut sets: Vec<BTreeSet<CellKey>> = Vec::new();
        let mut ambient = None;
        for c in cubes {
            if *ambient.get_or_insert(c.anchor.len()) != c.anchor.len() {
                return Err(ComplexError::InvalidCell(c.to_string()));
            }
            for f in c.closure() {
                let d = f.dim();
                if sets.len() <= d {
                    sets.resize_with(d + 1, BTreeSet::new);
                }
                sets[d].insert(CellKey::Cube(f));
            }
        }
        Self::from_sorted_cells(ComplexKind::Cubical, sets.into_iter().map(Vec::from_iter).collect())
    }

    /// Simplicial or cubical complex from explicit cell lists; each list is
    /// sorted and the result must be closed under faces.
    pub fn from_cells(kind: ComplexKind, mut cells: Vec<Vec<CellKey>>) -> Result<Self, ComplexError> {
        for (q, list) in cells.iter_mut().enumerate() {
            list.sort();
            list.dedup();
            for c in list.iter() {
                let ok = match (kind, c) {
                    (ComplexKind::Simplicial, CellKey::Simplex(v)) => v.len() == q + 1,
                    (ComplexKind::Cubical, CellKey::Cube(k)) => k.dim() == q,
                    _ => false,
                };
                if !ok {
                    return Err(ComplexError::InvalidCell(c.to_string()));
                }
            }
        }
        Self::from_sorted_cells(kind, cells)
    }

    fn from_sorted_cells(kind: ComplexKind, mut cells: Vec<Vec<CellKey>>) -> Result<Self, ComplexError> {
        while cells.last().is_some_and(|c| c.is_empty()) {
            cells.pop();
        }
        let index: Vec<HashMap<CellKey, usize>> = cells
            .iter()
            .map(|list| list.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect())
            .collect();
        let mut boundary = vec![CscMatrix::zeros(0, cells.first().map_or(0, |c| c.len()))];
        for q in 1..cells.len() {
            let mut columns = Vec::with_capacity(cells[q].len());
            for c in &cells[q] {
                let faces = c.boundary().ok_or(ComplexError::MixedKinds)?;
                let mut col = Vec::with_capacity(faces.len());
                for (f, s) in faces {
                    let &i = index[q - 1].get(&f).ok_or_else(|| ComplexError::NotClosed {
                        cell: c.to_string(),
                        face: f.to_string(),
                    })?;
                    col.push((i, s));
                }
                columns.push(col);
            }
            boundary.push(CscMatrix::from_columns(cells[q - 1].len(), columns));
        }
        let weights = cells.iter().map(|c| vec![1.0; c.len()]).collect();
        Ok(Self {
            kind,
            cells,
            index,
            boundary,
            weights,
        })
    }

    /// Complex given by labelled cells and boundary matrices
    /// (`boundaries[q-1]` maps q-cells to (q-1)-cells).
    pub fn from_boundaries(
        labels: Vec<Vec<String>>,
        boundaries: Vec<CscMatrix<i32>>,
    ) -> Result<Self, ComplexError> {
        if boundaries.len() + 1 != labels.len().max(1) {
            return Err(ComplexError::BadBoundary(format!(
                "{} dimensions need {} boundary maps, got {}",
                labels.len(),
                labels.len().saturating_sub(1),
                boundaries.len()
            )));
        }
        for (q, b) in boundaries.iter().enumerate() {
            if b.n_rows() != labels[q].len() || b.n_cols() != labels[q + 1].len() {
                return Err(ComplexError::BadBoundary(format!(
                    "boundary map of dimension {} has shape {}x{}",
                    q + 1,
                    b.n_rows(),
                    b.n_cols()
                )));
            }
            if q > 0 && !boundaries[q - 1].mul_is_zero(b) {
                return Err(ComplexError::BadBoundary(format!(
                    "boundary maps of dimensions {} and {} do not compose to zero",
                    q,
                    q + 1
                )));
            }
        }
        let cells: Vec<Vec<CellKey>> = labels
            .into_iter()
            .map(|l| l.into_iter().map(CellKey::Label).collect())
            .collect();
        let index: Vec<HashMap<CellKey, usize>> = cells
            .iter()
            .map(|list| list.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect())
            .collect();
        for (q, m) in index.iter().enumerate() {
            if m.len() != cells[q].len() {
                return Err(ComplexError::BadBoundary(format!("repeated label in dimension {q}")));
            }
        }
        let mut boundary = vec![CscMatrix::zeros(0, cells.first().map_or(0, |c| c.len()))];
        boundary.extend(boundaries);
        let weights = cells.iter().map(|c| vec![1.0; c.len()]).collect();
        Ok(Self {
            kind: ComplexKind::Abstract,
            cells,
            index,
            boundary,
            weights,
        })
    }

    pub fn with_weights(mut self, q: usize, weights: Vec<f64>) -> Result<Self, ComplexError> {
        self.set_weights(q, weights)?;
        Ok(self)
    }

    pub fn set_weights(&mut self, q: usize, weights: Vec<f64>) -> Result<(), ComplexError> {
        let n = self.n_cells(q);
        if weights.len() != n {
            return Err(ComplexError::WeightLength {
                q,
                cells: n,
                weights: weights.len(),
            });
        }
        if let Some((cell, &value)) = weights.iter().enumerate().find(|(_, &w)| !(w > 0.0 && w.is_finite())) {
            return Err(ComplexError::NonPositiveWeight { q, cell, value });
        }
        if n > 0 {
            self.weights[q] = weights;
        }
        Ok(())
    }

    pub fn kind(&self) -> ComplexKind {
        self.kind
    }

    /// Top dimension, `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.cells.len().checked_sub(1)
    }

    pub fn n_cells(&self, q: usize) -> usize {
        self.cells.get(q).map_or(0, |c| c.len())
    }

    pub fn cells(&self, q: usize) -> &[CellKey] {
        self.cells.get(q).map_or(&[], |c| c.as_slice())
    }

    pub fn cell(&self, q: usize, i: usize) -> &CellKey {
        &self.cells[q][i]
    }

    pub fn index_of(&self, q: usize, key: &CellKey) -> Option<usize> {
        self.index.get(q)?.get(key).copied()
    }

    pub fn weights(&self, q: usize) -> &[f64] {
        self.weights.get(q).map_or(&[], |w| w.as_slice())
    }

    pub fn is_unweighted(&self, q: usize) -> bool {
        self.weights(q).iter().all(|&w| w == 1.0)
    }

    /// `∂_q` as an `n_{q-1} × n_q` integer matrix. Empty when `q` exceeds the
    /// top dimension.
    pub fn boundary_matrix(&self, q: usize) -> Result<CscMatrix<i32>, ComplexError> {
        if q == 0 {
            return Err(ComplexError::DimensionOutOfRange { q });
        }
        Ok(match self.boundary.get(q) {
            Some(b) => b.clone(),
            None => CscMatrix::zeros(self.n_cells(q - 1), 0),
        })
    }

    pub(crate) fn boundary_ref(&self, q: usize) -> Option<&CscMatrix<i32>> {
        self.boundary.get(q).filter(|_| q > 0)
    }

    /// Every q-cell is a face of at most two (q+1)-cells.
    pub fn is_q_nonbranching(&self, q: usize) -> bool {
        self.first_branching_cell(q).is_none()
    }

    pub(crate) fn first_branching_cell(&self, q: usize) -> Option<(usize, usize)> {
        let b = self.boundary_ref(q + 1)?;
        b.row_counts().into_iter().enumerate().find(|&(_, c)| c > 2)
    }

    /// Checks `∂_q ∂_{q+1} = 0` in every dimension.
    pub fn boundaries_compose_to_zero(&self) -> bool {
        (2..self.boundary.len()).all(|q| self.boundary[q - 1].mul_is_zero(&self.boundary[q]))
    }
}
