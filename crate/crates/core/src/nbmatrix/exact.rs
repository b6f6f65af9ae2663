//! Exact Gaussian elimination used as a reference for rank and nullity.

use super::csr::NonBranchingMatrix;

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn bareiss_rank(a: &[Vec<i64>]) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<i128>> = a
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut rank = 0;
    let mut prev: i128 = 1;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let piv = m[rank][c];
        for i in rank + 1..rows {
            let f = m[i][c];
            for j in c..cols {
                let v = piv * m[i][j] - f * m[rank][j];
                debug_assert_eq!(v % prev, 0);
                m[i][j] = v / prev;
            }
        }
        prev = piv;
        rank += 1;
    }
    rank
}

/// Rank of a sparse matrix by left-to-right column elimination on the lowest
/// nonzero row, in exact integer arithmetic. Columns are added by merging,
/// so the cost is quadratic on inputs such as a star pattern.
pub fn column_elimination_rank(m: &NonBranchingMatrix) -> usize {
    let n_cols = m.n_cols();
    let mut cols: Vec<Vec<(u32, i64)>> = vec![Vec::new(); n_cols];
    for (i, j, v) in m.triplets() {
        cols[j].push((i as u32, v as i64));
    }
    let mut owner: Vec<Option<usize>> = vec![None; m.n_rows()];
    let mut reduced: Vec<Vec<(u32, i64)>> = vec![Vec::new(); n_cols];
    let mut rank = 0;
    for j in 0..n_cols {
        let mut col = std::mem::take(&mut cols[j]);
        while let Some(&(low, a)) = col.last() {
            let Some(k) = owner[low as usize] else {
                break;
            };
            let other = &reduced[k];
            let p = other.last().expect("pivot column is nonzero").1;
            col = combine(&col, p, &other[..], a);
        }
        if let Some(&(low, _)) = col.last() {
            owner[low as usize] = Some(j);
            rank += 1;
        }
        reduced[j] = col;
    }
    rank
}

// p*x - a*y, entries sorted by row; zero entries dropped
fn combine(x: &[(u32, i64)], p: i64, y: &[(u32, i64)], a: i64) -> Vec<(u32, i64)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    let mut big = 0i64;
    let mut push = |r: u32, v: i64, out: &mut Vec<(u32, i64)>| {
        if v != 0 {
            big = big.max(v.abs());
            out.push((r, v));
        }
    };
    let mul = |s: i64, v: i64| s.checked_mul(v).expect("oracle overflow");
    while i < x.len() || j < y.len() {
        if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
            push(x[i].0, mul(p, x[i].1), &mut out);
            i += 1;
        } else if i == x.len() || y[j].0 < x[i].0 {
            push(y[j].0, -mul(a, y[j].1), &mut out);
            j += 1;
        } else {
            push(x[i].0, mul(p, x[i].1) - mul(a, y[j].1), &mut out);
            i += 1;
            j += 1;
        }
    }
    if big > 1 << 20 {
        let g = out.iter().fold(0i64, |g, e| gcd(g, e.1.abs()));
        if g > 1 {
            for e in &mut out {
                e.1 /= g;
            }
        }
    }
    out
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
