use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::bundle::{BundleColumn, ColumnKind, ColumnSpec, Frame, UpLaplacianBundle};
use super::sum::ExactSum;
use super::PersistenceError;
use crate::complexes::{up_rows, ComplexPair};
use crate::nbmatrix::{Link, NonBranchingMatrix, ParityDsu};

// Per-root data of a union-find set of (q+1)-cells.
#[derive(Debug, Clone, Default)]
struct RootData {
    rows: usize,
    singular: bool,
    size: usize,
    min: usize,
    max: usize,
    inv_weights: ExactSum,
    // b = flip * stored: the columns of the set summed with their signs
    // relative to the root, indexed by q-cell of L
    flip: i32,
    stored: HashMap<usize, i32>,
}

/// Reduction state for a cell-wise filtration `K_0 ⊂ K_1 ⊂ … ⊂ K_m ⊆ L`.
///
/// Rows of `D` only ever get removed going forward, which union-find cannot
/// undo, so the engine starts at `K_m` and walks back: each step adds one row
/// to `D`, costing one union and one merge of the two sets' summed columns.
pub struct FiltrationEngine<'a> {
    frame: Frame<'a>,
    up: NonBranchingMatrix,
    steps: Vec<usize>,
    in_k: Vec<bool>,
    pd: ParityDsu,
    data: Vec<RootData>,
    untouched: BTreeSet<usize>,
    regulable: BTreeMap<usize, usize>,
    // step whose pair the state currently describes
    at: usize,
}

impl<'a> FiltrationEngine<'a> {
    /// Engine positioned at the last step, `K_m = K_0 ∪ steps`.
    pub fn new(pair: &'a ComplexPair, q: usize, steps: &[usize]) -> Result<Self, PersistenceError> {
        let big = pair.big();
        let frame = Frame::new(big, q)?;
        let n_q = big.n_cells(q);
        let n_cols = big.n_cells(q + 1);
        let mut in_k = pair.mask(q).to_vec();
        in_k.resize(n_q, false);
        let mut probe = pair.clone();
        for &s in steps {
            if s >= n_q || in_k[s] {
                return Err(PersistenceError::InvalidStep {
                    index: s,
                    reason: if s >= n_q { "no such cell" } else { "cell already in the subcomplex" },
                });
            }
            in_k[s] = true;
            probe.add_cell(q, s)?;
        }
        let all: Vec<usize> = (0..n_q).collect();
        let up = up_rows(big, q, &all, n_cols)?;
        let w1 = big.weights(q + 1);
        let data = (0..n_cols)
            .map(|c| RootData {
                rows: 0,
                singular: false,
                size: 1,
                min: c,
                max: c,
                inv_weights: std::iter::once(1.0 / w1[c]).collect(),
                flip: 1,
                stored: frame.column_entries(c).into_iter().collect(),
            })
            .collect();
        let mut engine = Self {
            frame,
            up,
            steps: steps.to_vec(),
            in_k,
            pd: ParityDsu::new(n_cols),
            data,
            untouched: (0..n_cols).collect(),
            regulable: BTreeMap::new(),
            at: steps.len(),
        };
        for i in 0..n_q {
            if !engine.in_k[i] {
                engine.add_row(i);
            }
        }
        Ok(engine)
    }

    /// Index of the step the state describes.
    pub fn position(&self) -> usize {
        self.at
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Moves from `K_i` to `K_{i-1}`. Returns false at `K_0`.
    pub fn step_back(&mut self) -> bool {
        if self.at == 0 {
            return false;
        }
        self.at -= 1;
        let cell = self.steps[self.at];
        self.in_k[cell] = false;
        self.add_row(cell);
        true
    }

    fn is_regulable(&mut self, r: usize) -> bool {
        let d = &self.data[r];
        d.rows > 0 && !d.singular && !self.pd.has_conflict(r)
    }

    fn unregister(&mut self, r: usize) {
        if self.is_regulable(r) {
            self.regulable.remove(&self.data[r].max);
        }
    }

    fn register(&mut self, r: usize) {
        if self.is_regulable(r) {
            self.regulable.insert(self.data[r].max, r);
        }
    }

    fn add_row(&mut self, i: usize) {
        let (cols, vals) = self.up.row(i);
        match (cols, vals) {
            ([u], _) => {
                let u = *u;
                let (r, _) = self.pd.find(u);
                self.unregister(r);
                self.untouched.remove(&u);
                self.data[r].rows += 1;
                self.data[r].singular = true;
                self.register(r);
            }
            ([u, v], [a, b]) => {
                let (u, v, rel) = (*u, *v, -a * b);
                let (ru, _) = self.pd.find(u);
                let (rv, _) = self.pd.find(v);
                self.unregister(ru);
                self.unregister(rv);
                self.untouched.remove(&u);
                self.untouched.remove(&v);
                match self.pd.link(u, v, rel) {
                    Link::Same { root, .. } => {
                        self.data[root].rows += 1;
                        self.register(root);
                    }
                    Link::Merged { keep, drop, sign } => {
                        self.merge(keep, drop, sign as i32);
                        self.data[keep].rows += 1;
                        self.register(keep);
                    }
                }
            }
            _ => {}
        }
    }

    // b_keep ← b_keep + sign · b_drop, iterating over the smaller map
    fn merge(&mut self, keep: usize, drop: usize, sign: i32) {
        let mut d = std::mem::take(&mut self.data[drop]);
        let k = &mut self.data[keep];
        k.rows += d.rows;
        k.singular |= d.singular;
        k.size += d.size;
        k.min = k.min.min(d.min);
        k.max = k.max.max(d.max);
        k.inv_weights.merge(&d.inv_weights);
        let factor = k.flip * sign * d.flip;
        if k.stored.len() < d.stored.len() {
            std::mem::swap(&mut k.stored, &mut d.stored);
            k.flip = sign * d.flip;
        }
        for (i, v) in d.stored {
            let e = k.stored.entry(i).or_insert(0);
            *e += factor * v;
            if *e == 0 {
                k.stored.remove(&i);
            }
        }
    }

    /// The bundle of the current pair `K_i ⊆ L`.
    pub fn bundle(&mut self, materialize_delta: bool) -> UpLaplacianBundle {
        let k_cells: Vec<usize> = (0..self.in_k.len()).filter(|&i| self.in_k[i]).collect();
        let w1 = self.frame.big.weights(self.frame.q + 1);
        let roots: Vec<usize> = self.regulable.values().copied().collect();
        let mut specs = Vec::with_capacity(roots.len() + self.untouched.len());
        for r in roots {
            let (_, s_min) = self.pd.find(self.data[r].min);
            let d = &self.data[r];
            let f = d.flip * s_min as i32;
            let mut entries: Vec<(usize, i32)> = d.stored.iter().map(|(&i, &v)| (i, f * v)).collect();
            entries.sort_unstable();
            specs.push(ColumnSpec {
                info: BundleColumn {
                    kind: ColumnKind::Component,
                    representative: d.max,
                    volume: d.size,
                },
                entries,
                weight: 1.0 / d.inv_weights.value(),
            });
        }
        for &c in &self.untouched {
            specs.push(ColumnSpec {
                info: BundleColumn {
                    kind: ColumnKind::Cell,
                    representative: c,
                    volume: 1,
                },
                entries: self.frame.column_entries(c),
                weight: w1[c],
            });
        }
        self.frame.assemble(k_cells, specs, materialize_delta)
    }
}

/// Bundles of every pair `K_i ⊆ L` of the filtration adding `steps` to `K`
/// one q-cell at a time, passed to `emit` as `(i, bundle)` for
/// `i = 0..=steps.len()` in order. Returns the number of bundles.
pub fn filtration_run(
    pair: &ComplexPair,
    q: usize,
    steps: &[usize],
    mut emit: impl FnMut(usize, UpLaplacianBundle),
) -> Result<usize, PersistenceError> {
    let mut engine = FiltrationEngine::new(pair, q, steps)?;
    let mut out = Vec::with_capacity(steps.len() + 1);
    loop {
        out.push(engine.bundle(false));
        if !engine.step_back() {
            break;
        }
    }
    let n = out.len();
    for (i, b) in out.into_iter().rev().enumerate() {
        emit(i, b);
    }
    Ok(n)
}

