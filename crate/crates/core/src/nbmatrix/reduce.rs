use super::csr::NonBranchingMatrix;
use super::dsu::{Dsu, ParityDsu};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComponentKind {
    ZeroColumn,
    Regulable,
    Irregular,
    RowSingular,
}

impl ComponentKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ComponentKind::ZeroColumn => "zero-column",
            ComponentKind::Regulable => "regulable",
            ComponentKind::Irregular => "irregular",
            ComponentKind::RowSingular => "row-singular",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub kind: ComponentKind,
    /// Columns, ascending.
    pub cols: Vec<usize>,
    /// Rows with a nonzero in this component, ascending.
    pub rows: Vec<usize>,
    /// Flags for `cols` (same order) on regulable components.
    pub signs: Option<Vec<i8>>,
}

impl Component {
    /// Largest column; the kernel column index of a regulable component.
    pub fn representative(&self) -> usize {
        *self.cols.last().expect("component without columns")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    /// Ordered by smallest column.
    pub components: Vec<Component>,
    pub component_of: Vec<usize>,
}

impl ComponentPartition {
    pub fn count(&self, kind: ComponentKind) -> usize {
        self.components.iter().filter(|c| c.kind == kind).count()
    }

    pub fn regulable(&self) -> impl Iterator<Item = &Component> {
        self.components
            .iter()
            .filter(|c| c.kind == ComponentKind::Regulable)
    }
}

/// Orientation flags for a matrix without 1-nonzero rows.
///
/// `orientable` is true when flipping columns with `signs[j] = -1` leaves
/// every 2-nonzero row with one `+1` and one `-1`. Signs are normalized so the
/// smallest column of every connected piece keeps `+1`; columns touched by
/// no row get `+1`. One pass over the rows.
pub fn reorient(m: &NonBranchingMatrix) -> (bool, Vec<i8>) {
    let mut pd = ParityDsu::new(m.n_cols());
    let mut ok = true;
    for i in 0..m.n_rows() {
        let (cols, vals) = m.row(i);
        if let ([u, v], [a, b]) = (cols, vals) {
            let root = pd.add_row(*u, *a, *v, *b);
            if pd.has_conflict(root) {
                ok = false;
            }
        }
    }
    (ok, normalized_signs(&mut pd, m.n_cols()))
}

fn normalized_signs(pd: &mut ParityDsu, n: usize) -> Vec<i8> {
    // the first column seen for each root (ascending scan) is the smallest
    let mut root_sign = vec![0i8; n];
    let mut signs = vec![1i8; n];
    for (j, s_out) in signs.iter_mut().enumerate() {
        let (r, s) = pd.find(j);
        if root_sign[r] == 0 {
            root_sign[r] = s;
        }
        *s_out = s * root_sign[r];
    }
    signs
}

/// Splits the columns of `m` into components and classifies each one.
pub fn classify_components(m: &NonBranchingMatrix, dsu: &Dsu) -> ComponentPartition {
    let l = m.n_cols();
    let roots: Vec<usize> = (0..l).map(|j| dsu.root_of(j)).collect();
    let touched = m.column_counts();

    let mut singular = vec![false; l];
    let mut pd = ParityDsu::new(l);
    for i in 0..m.n_rows() {
        let (cols, vals) = m.row(i);
        match (cols, vals) {
            ([u], _) => singular[roots[*u]] = true,
            ([u, v], [a, b]) => {
                pd.add_row(*u, *a, *v, *b);
            }
            _ => {}
        }
    }
    let mut conflict = vec![false; l];
    for j in 0..l {
        if pd.has_conflict(j) {
            conflict[roots[j]] = true;
        }
    }
    let signs = normalized_signs(&mut pd, l);

    let mut slot = vec![usize::MAX; l];
    let mut components: Vec<Component> = Vec::new();
    let mut component_of = vec![0; l];
    for j in 0..l {
        let r = roots[j];
        if slot[r] == usize::MAX {
            slot[r] = components.len();
            let kind = if touched[j] == 0 {
                ComponentKind::ZeroColumn
            } else if singular[r] {
                ComponentKind::RowSingular
            } else if conflict[r] {
                ComponentKind::Irregular
            } else {
                ComponentKind::Regulable
            };
            components.push(Component {
                kind,
                cols: Vec::new(),
                rows: Vec::new(),
                signs: (kind == ComponentKind::Regulable).then(Vec::new),
            });
        }
        let c = &mut components[slot[r]];
        c.cols.push(j);
        if let Some(s) = c.signs.as_mut() {
            s.push(signs[j]);
        }
        component_of[j] = slot[r];
    }
    for i in 0..m.n_rows() {
        let (cols, _) = m.row(i);
        if let Some(&j) = cols.first() {
            components[component_of[j]].rows.push(i);
        }
    }
    ComponentPartition {
        components,
        component_of,
    }
}

/// Sparse upper-triangular `V` stored by columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpperFactor {
    n: usize,
    // columns with more than one entry: (column, rows ascending); the diagonal
    // entry is always 1 and included in rows
    multi: Vec<(usize, Vec<usize>)>,
}

impl UpperFactor {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Rows of column `j` (all entries are 1).
    pub fn column(&self, j: usize) -> Vec<usize> {
        match self.multi.binary_search_by_key(&j, |e| e.0) {
            Ok(p) => self.multi[p].1.clone(),
            Err(_) => vec![j],
        }
    }

    pub fn multi_entry_columns(&self) -> impl Iterator<Item = (usize, &[usize])> {
        self.multi.iter().map(|(j, r)| (*j, r.as_slice()))
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0i64; self.n]; self.n];
        for (j, row) in out.iter_mut().enumerate() {
            row[j] = 1;
        }
        for (j, rows) in &self.multi {
            for &i in rows {
                out[i][*j] = 1;
            }
        }
        out
    }
}

/// Weak column reduction `R = D E V` of a non-branching matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakReduction {
    pub r: NonBranchingMatrix,
    pub e: Vec<i8>,
    pub v: UpperFactor,
    /// Columns of `R` that are zero, ascending.
    pub kernel_cols: Vec<usize>,
    pub partition: ComponentPartition,
}

impl WeakReduction {
    /// Kernel vectors `E V(:, c)` for every regulable component, as
    /// `(representative, [(column, sign)])`.
    pub fn kernel_basis(&self) -> Vec<(usize, Vec<(usize, i8)>)> {
        self.v
            .multi_entry_columns()
            .map(|(j, rows)| (j, rows.iter().map(|&i| (i, self.e[i])).collect()))
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.e.len() - self.kernel_cols.len()
    }
}

pub fn weak_reduce(m: &NonBranchingMatrix) -> WeakReduction {
    let dsu = super::dsu::dsu_components(m);
    let partition = classify_components(m, &dsu);
    let l = m.n_cols();
    let mut e = vec![1i8; l];
    let mut zero = vec![false; l];
    let mut multi = Vec::new();
    for comp in &partition.components {
        match comp.kind {
            ComponentKind::ZeroColumn => zero[comp.cols[0]] = true,
            ComponentKind::Regulable => {
                let signs = comp.signs.as_ref().expect("regulable signs");
                for (&j, &s) in comp.cols.iter().zip(signs) {
                    e[j] = s;
                }
                zero[comp.representative()] = true;
                if comp.cols.len() > 1 {
                    multi.push((comp.representative(), comp.cols.clone()));
                }
            }
            _ => {}
        }
    }
    multi.sort_unstable_by_key(|e| e.0);
    let r = m.scale_and_zero_columns(&e, &zero);
    let kernel_cols = (0..l).filter(|&j| zero[j]).collect();
    WeakReduction {
        r,
        e,
        v: UpperFactor { n: l, multi },
        kernel_cols,
        partition,
    }
}

/// Rank over the reals: columns minus regulable components minus zero columns.
pub fn rank(m: &NonBranchingMatrix) -> usize {
    let dsu = super::dsu::dsu_components(m);
    let p = classify_components(m, &dsu);
    m.n_cols() - p.count(ComponentKind::Regulable) - p.count(ComponentKind::ZeroColumn)
}
