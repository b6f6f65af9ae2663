use std::fmt;

/// Product of elementary intervals: along axis `i` the interval is
/// `[anchor[i], anchor[i] + 1]` when `extent[i]`, else the point `[anchor[i]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cube {
    pub anchor: Vec<i64>,
    pub extent: Vec<bool>,
}

impl Cube {
    pub fn new(anchor: Vec<i64>, extent: Vec<bool>) -> Self {
        assert_eq!(anchor.len(), extent.len(), "anchor/extent length mismatch");
        Self { anchor, extent }
    }

    /// Unit square `[x, x+1] × [y, y+1]`.
    pub fn square(x: i64, y: i64) -> Self {
        Self::new(vec![x, y], vec![true, true])
    }

    pub fn dim(&self) -> usize {
        self.extent.iter().filter(|&&e| e).count()
    }

    /// Signed faces from the product rule
    /// `∂(I × J) = ∂I × J + (-1)^{dim I} I × ∂J` with `∂[k, k+1] = [k+1] - [k]`.
    pub fn boundary(&self) -> Vec<(Cube, i32)> {
        let mut out = Vec::with_capacity(2 * self.dim());
        let mut before = 0;
        for axis in 0..self.extent.len() {
            if !self.extent[axis] {
                continue;
            }
            let sign = if before % 2 == 0 { 1 } else { -1 };
            let mut lower = self.clone();
            lower.extent[axis] = false;
            let mut upper = lower.clone();
            upper.anchor[axis] += 1;
            out.push((upper, sign));
            out.push((lower, -sign));
            before += 1;
        }
        out
    }

    /// All faces including the cube itself.
    pub fn closure(&self) -> Vec<Cube> {
        let mut out = vec![Cube::new(self.anchor.clone(), vec![false; self.extent.len()])];
        for axis in 0..self.extent.len() {
            if !self.extent[axis] {
                continue;
            }
            let mut next = Vec::with_capacity(out.len() * 3);
            for c in out {
                let mut up = c.clone();
                up.anchor[axis] += 1;
                let mut full = c.clone();
                full.extent[axis] = true;
                next.push(c);
                next.push(up);
                next.push(full);
            }
            out = next;
        }
        out
    }
}

impl fmt::Display for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (&a, &e)) in self.anchor.iter().zip(&self.extent).enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "[{},{}]", a, a + e as i64)?;
        }
        Ok(())
    }
}

/// Identity of a cell, independent of its position in a complex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CellKey {
    /// Sorted vertex tuple.
    Simplex(Vec<u32>),
    Cube(Cube),
    Label(String),
}

impl CellKey {
    pub fn simplex(mut vertices: Vec<u32>) -> Self {
        vertices.sort_unstable();
        CellKey::Simplex(vertices)
    }

    pub fn label(s: impl Into<String>) -> Self {
        CellKey::Label(s.into())
    }

    /// Faces with orientation signs; `None` for labels, whose boundary is
    /// supplied explicitly.
    pub fn boundary(&self) -> Option<Vec<(CellKey, i32)>> {
        match self {
            CellKey::Simplex(v) if v.len() <= 1 => Some(Vec::new()),
            CellKey::Simplex(v) => Some(
                (0..v.len())
                    .map(|i| {
                        let mut f = v.clone();
                        f.remove(i);
                        (CellKey::Simplex(f), if i % 2 == 0 { 1 } else { -1 })
                    })
                    .collect(),
            ),
            CellKey::Cube(c) => Some(
                c.boundary()
                    .into_iter()
                    .map(|(f, s)| (CellKey::Cube(f), s))
                    .collect(),
            ),
            CellKey::Label(_) => None,
        }
    }
}

impl fmt::Display for CellKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellKey::Simplex(v) => {
                let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                f.write_str(&s.join(" "))
            }
            CellKey::Cube(c) => c.fmt(f),
            CellKey::Label(s) => f.write_str(s),
        }
    }
}
