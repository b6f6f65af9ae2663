use super::csr::NonBranchingMatrix;

/// Disjoint-set union with union by rank and path halving.
#[derive(Debug, Clone)]
pub struct Dsu {
    parent: Vec<usize>,
    rank: Vec<u32>,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![1; n],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the sets of `x` and `y`; returns the surviving root.
    pub fn union(&mut self, x: usize, y: usize) -> usize {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return rx;
        }
        if self.rank[rx] > self.rank[ry] {
            self.parent[ry] = rx;
            rx
        } else {
            self.parent[rx] = ry;
            if self.rank[rx] == self.rank[ry] {
                self.rank[ry] += 1;
            }
            ry
        }
    }

    /// Root of `x` without touching the stored parents.
    pub fn root_of(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Points every node directly at its root.
    pub fn compress(&mut self) {
        for x in 0..self.parent.len() {
            let r = self.find(x);
            self.parent[x] = r;
        }
    }

    /// Root of each node after full compression.
    pub fn roots(&mut self) -> Vec<usize> {
        self.compress();
        self.parent.clone()
    }

    /// Parent array as currently stored.
    pub fn parent(&self) -> &[usize] {
        &self.parent
    }
}

/// Union-find over the columns of `m`: each 2-nonzero row joins its two
/// columns; 1-nonzero rows join nothing. Returned fully compressed.
pub fn dsu_components(m: &NonBranchingMatrix) -> Dsu {
    let mut dsu = Dsu::new(m.n_cols());
    for i in 0..m.n_rows() {
        let (cols, _) = m.row(i);
        if let [a, b] = *cols {
            dsu.union(a, b);
        }
    }
    dsu.compress();
    dsu
}

/// Outcome of [`ParityDsu::link`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Link {
    /// Both columns already shared `root`; `consistent` is false when the
    /// new relation contradicts the stored parity.
    Same { root: usize, consistent: bool },
    /// Root `drop` now points at `keep` with `e_drop = sign · e_keep`.
    Merged { keep: usize, drop: usize, sign: i8 },
}

/// Union-find where each node also stores a sign relative to its parent.
///
/// A row with entries `a` at column `u` and `b` at column `v` asks for column
/// flags with `e_u a + e_v b = 0`, i.e. `e_u e_v = -a b`. Merging two sets is
/// always consistent; a row inside one set is checked against the stored
/// parity and records a conflict on mismatch.
#[derive(Debug, Clone)]
pub struct ParityDsu {
    parent: Vec<usize>,
    rank: Vec<u32>,
    // sign of node relative to its parent
    sign: Vec<i8>,
    conflict: Vec<bool>,
}

impl ParityDsu {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![1; n],
            sign: vec![1; n],
            conflict: vec![false; n],
        }
    }

    /// Root of `x` and the sign of `x` relative to that root.
    pub fn find(&mut self, x: usize) -> (usize, i8) {
        let mut root = x;
        let mut s = 1i8;
        while self.parent[root] != root {
            s *= self.sign[root];
            root = self.parent[root];
        }
        // second pass: point the path at the root with accumulated signs
        let mut cur = x;
        let mut acc = s;
        while self.parent[cur] != root && cur != root {
            let next = self.parent[cur];
            let next_acc = acc * self.sign[cur];
            self.parent[cur] = root;
            self.sign[cur] = acc;
            cur = next;
            acc = next_acc;
        }
        (root, s)
    }

    /// Imposes `e_u e_v = rel`. Returns the root of the merged set.
    pub fn relate(&mut self, u: usize, v: usize, rel: i8) -> usize {
        match self.link(u, v, rel) {
            Link::Same { root, .. } => root,
            Link::Merged { keep, .. } => keep,
        }
    }

    /// Like [`relate`](Self::relate), reporting what happened to the roots.
    pub fn link(&mut self, u: usize, v: usize, rel: i8) -> Link {
        let (ru, su) = self.find(u);
        let (rv, sv) = self.find(v);
        if ru == rv {
            let consistent = su * sv == rel;
            if !consistent {
                self.conflict[ru] = true;
            }
            return Link::Same { root: ru, consistent };
        }
        // sign of rv relative to ru: e_rv = e_v sv = rel e_u sv = rel su sv e_ru
        let s = rel * su * sv;
        let (keep, drop) = if self.rank[ru] > self.rank[rv] {
            (ru, rv)
        } else {
            if self.rank[ru] == self.rank[rv] {
                self.rank[rv] += 1;
            }
            (rv, ru)
        };
        self.parent[drop] = keep;
        self.sign[drop] = s;
        self.conflict[keep] |= self.conflict[drop];
        Link::Merged { keep, drop, sign: s }
    }

    /// Adds a two-entry row `(u, a), (v, b)`.
    pub fn add_row(&mut self, u: usize, a: i8, v: usize, b: i8) -> usize {
        self.relate(u, v, -a * b)
    }

    pub fn has_conflict(&mut self, x: usize) -> bool {
        let (r, _) = self.find(x);
        self.conflict[r]
    }

    pub fn mark_conflict(&mut self, x: usize) {
        let (r, _) = self.find(x);
        self.conflict[r] = true;
    }
}
