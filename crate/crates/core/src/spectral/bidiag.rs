//! Singular values of an upper bidiagonal matrix by implicit-shift QR
//! (Golub–Kahan sweeps with Wilkinson shift), never forming `BᵀB`.

use serde::Serialize;

/// Upper bidiagonal matrix with diagonal `alpha` and superdiagonal `beta`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Bidiagonal {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
}

impl Bidiagonal {
    pub fn new(alpha: Vec<f64>, beta: Vec<f64>) -> Self {
        assert!(
            beta.len() + 1 == alpha.len() || (alpha.is_empty() && beta.is_empty()),
            "superdiagonal length must be one less than the diagonal"
        );
        Self { alpha, beta }
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }
}

/// All singular values, descending.
pub fn bidiagonal_singular_values(b: &Bidiagonal) -> Vec<f64> {
    bidiagonal_svd(b, false).0
}

/// Singular values (descending) and, when `want_left`, the matching left
/// singular vectors as columns of a row-major `k × k` array.
pub fn bidiagonal_svd(b: &Bidiagonal, want_left: bool) -> (Vec<f64>, Option<Vec<Vec<f64>>>) {
    let n = b.len();
    let mut d = b.alpha.clone();
    let mut e = b.beta.clone();
    let mut u: Option<Vec<Vec<f64>>> = want_left.then(|| {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect()
    });
    if n == 0 {
        return (Vec::new(), u);
    }
    let eps = f64::EPSILON;
    let norm = d.iter().chain(&e).fold(0.0f64, |m, x| m.max(x.abs()));
    let tiny = f64::MIN_POSITIVE.max(eps * eps * norm);
    let max_sweeps = 100 * n * n + 100;
    let mut sweeps = 0;
    let mut hi = n - 1;
    while hi > 0 {
        // deflate converged tail
        if e[hi - 1].abs() <= eps * (d[hi - 1].abs() + d[hi].abs()) || e[hi - 1].abs() <= tiny {
            e[hi - 1] = 0.0;
            hi -= 1;
            continue;
        }
        let mut lo = hi - 1;
        while lo > 0 {
            let s = e[lo - 1].abs();
            if s <= eps * (d[lo - 1].abs() + d[lo].abs()) || s <= tiny {
                e[lo - 1] = 0.0;
                break;
            }
            lo -= 1;
        }
        sweeps += 1;
        if sweeps > max_sweeps {
            break;
        }
        // a zero on the diagonal splits the block after chasing its row out
        if let Some(z) = (lo..=hi).find(|&i| d[i].abs() <= eps * norm) {
            d[z] = 0.0;
            if z < hi {
                chase_row(&mut d, &mut e, z, hi, u.as_mut());
            } else {
                chase_column(&mut d, &mut e, lo, hi);
            }
            continue;
        }
        qr_sweep(&mut d, &mut e, lo, hi, u.as_mut());
    }
    // signs and order
    for (i, x) in d.iter_mut().enumerate() {
        if *x < 0.0 {
            *x = -*x;
            if let Some(u) = u.as_mut() {
                for row in u.iter_mut() {
                    row[i] = -row[i];
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[b].total_cmp(&d[a]));
    let values = order.iter().map(|&i| d[i]).collect();
    let u = u.map(|u| {
        u.iter()
            .map(|row| order.iter().map(|&i| row[i]).collect())
            .collect()
    });
    (values, u)
}

fn givens(f: f64, g: f64) -> (f64, f64, f64) {
    if g == 0.0 {
        return (1.0, 0.0, f);
    }
    let r = f.hypot(g);
    (f / r, g / r, r)
}

// rotate columns a, b of the accumulated left vectors:
// new_a = c*a + s*b, new_b = -s*a + c*b
fn rotate_left(u: Option<&mut Vec<Vec<f64>>>, a: usize, b: usize, c: f64, s: f64) {
    if let Some(u) = u {
        for row in u.iter_mut() {
            let (x, y) = (row[a], row[b]);
            row[a] = c * x + s * y;
            row[b] = -s * x + c * y;
        }
    }
}

// d[z] == 0 with z < hi: zero row z by left rotations against rows z+1..=hi
fn chase_row(d: &mut [f64], e: &mut [f64], z: usize, hi: usize, mut u: Option<&mut Vec<Vec<f64>>>) {
    let mut f = e[z];
    e[z] = 0.0;
    for j in z + 1..=hi {
        let (c, s, r) = givens(d[j], f);
        d[j] = r;
        rotate_left(u.as_deref_mut(), j, z, c, s);
        if j < hi {
            f = -s * e[j];
            e[j] *= c;
        }
    }
}

// d[hi] == 0: zero column hi by right rotations against columns hi-1..=lo
fn chase_column(d: &mut [f64], e: &mut [f64], lo: usize, hi: usize) {
    let mut f = e[hi - 1];
    e[hi - 1] = 0.0;
    for j in (lo..hi).rev() {
        let (c, s, r) = givens(d[j], f);
        d[j] = r;
        if j > lo {
            f = -s * e[j - 1];
            e[j - 1] *= c;
        }
    }
}

fn qr_sweep(d: &mut [f64], e: &mut [f64], lo: usize, hi: usize, mut u: Option<&mut Vec<Vec<f64>>>) {
    // Wilkinson shift from the trailing 2x2 block of BᵀB
    let a = d[hi - 1] * d[hi - 1] + if hi - 1 > lo { e[hi - 2] * e[hi - 2] } else { 0.0 };
    let b = d[hi - 1] * e[hi - 1];
    let c = d[hi] * d[hi] + e[hi - 1] * e[hi - 1];
    let delta = 0.5 * (a - c);
    let denom = delta + delta.signum() * delta.hypot(b);
    let mu = if denom == 0.0 { c - b.abs() } else { c - b * b / denom };

    let mut y = d[lo] * d[lo] - mu;
    let mut z = d[lo] * e[lo];
    for k in lo..hi {
        // right rotation on columns k, k+1
        let (c, s, r) = givens(y, z);
        if k > lo {
            e[k - 1] = r;
        }
        y = c * d[k] + s * e[k];
        e[k] = -s * d[k] + c * e[k];
        z = s * d[k + 1];
        d[k + 1] *= c;
        // left rotation on rows k, k+1
        let (c, s, r) = givens(y, z);
        d[k] = r;
        rotate_left(u.as_deref_mut(), k, k + 1, c, s);
        y = c * e[k] + s * d[k + 1];
        d[k + 1] = -s * e[k] + c * d[k + 1];
        e[k] = y;
        if k + 1 < hi {
            z = s * e[k + 1];
            e[k + 1] *= c;
        }
    }
}
