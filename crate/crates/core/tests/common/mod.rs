#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use nalgebra::DMatrix;
use nblap::complexes::{CellKey, Complex, ComplexPair, Cube};
use nblap::nbmatrix::NonBranchingMatrix;
use nblap::sparse::CscMatrix;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

// ---------------------------------------------------------------- fixtures

/// The 6×7 worked example, rows [13],[35],[42],[51],[46],[47] (1-indexed).
pub fn golden_d() -> NonBranchingMatrix {
    let rows: [[(usize, i64); 2]; 6] = [
        [(1, 1), (3, -1)],
        [(3, 1), (5, -1)],
        [(2, -1), (4, 1)],
        [(1, -1), (5, 1)],
        [(4, 1), (6, -1)],
        [(4, 1), (7, -1)],
    ];
    let rows: Vec<Vec<(usize, i64)>> = rows
        .iter()
        .map(|r| r.iter().map(|&(c, v)| (c - 1, v)).collect())
        .collect();
    NonBranchingMatrix::from_rows(7, &rows).unwrap()
}

pub fn golden_u7() -> Vec<Vec<i64>> {
    vec![
        vec![1, 0, 0, 0, 1, 0, 0],
        vec![0, 1, 0, 0, 0, 0, 1],
        vec![0, 0, 1, 0, 1, 0, 0],
        vec![0, 0, 0, 1, 0, 0, 1],
        vec![0, 0, 0, 0, 1, 0, 0],
        vec![0, 0, 0, 0, 0, 1, 1],
        vec![0, 0, 0, 0, 0, 0, 1],
    ]
}

pub fn golden_r() -> Vec<Vec<i64>> {
    vec![
        vec![1, 0, -1, 0, 0, 0, 0],
        vec![0, 0, 1, 0, 0, 0, 0],
        vec![0, -1, 0, 1, 0, 0, 0],
        vec![-1, 0, 0, 0, 0, 0, 0],
        vec![0, 0, 0, 1, 0, -1, 0],
        vec![0, 0, 0, 1, 0, 0, 0],
    ]
}

pub fn small_d(i: usize) -> NonBranchingMatrix {
    let d: Vec<Vec<i64>> = match i {
        1 => vec![vec![1, 0, -1], vec![1, -1, 0], vec![0, -1, 1], vec![0, 0, -1]],
        2 => vec![vec![1, 0, 0], vec![1, 1, 0], vec![0, -1, -1], vec![0, 0, 1]],
        3 => vec![vec![1, 0, -1], vec![1, 1, 0], vec![0, 1, -1], vec![0, 0, 1]],
        4 => vec![vec![1, 0, -1], vec![1, 1, 0], vec![0, -1, -1]],
        5 => vec![vec![1, 0, -1], vec![1, 1, 0], vec![0, 1, -1]],
        _ => panic!("no such example"),
    };
    NonBranchingMatrix::from_dense(&d).unwrap()
}

/// Complex from labelled simplices written as vertex strings ("124"); each
/// label fixes the orientation of its simplex, faces are matched up to a
/// permutation whose parity gives the sign.
pub fn oriented_simplicial(levels: &[&[&str]]) -> Complex {
    let labels: Vec<Vec<String>> = levels
        .iter()
        .map(|l| l.iter().map(|s| s.to_string()).collect())
        .collect();
    let mut boundaries = Vec::new();
    for q in 1..labels.len() {
        let lookup: HashMap<Vec<char>, (usize, Vec<char>)> = labels[q - 1]
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let v: Vec<char> = s.chars().collect();
                let mut key = v.clone();
                key.sort();
                (key, (i, v))
            })
            .collect();
        let cols = labels[q]
            .iter()
            .map(|s| {
                let v: Vec<char> = s.chars().collect();
                (0..v.len())
                    .map(|k| {
                        let mut face = v.clone();
                        face.remove(k);
                        let mut key = face.clone();
                        key.sort();
                        let (row, written) = &lookup[&key];
                        let sign = if k % 2 == 0 { 1 } else { -1 } * permutation_sign(&face, written);
                        (*row, sign)
                    })
                    .collect()
            })
            .collect();
        boundaries.push(CscMatrix::from_columns(labels[q - 1].len(), cols));
    }
    Complex::from_boundaries(labels, boundaries).unwrap()
}

fn permutation_sign(a: &[char], b: &[char]) -> i32 {
    let p: Vec<usize> = a.iter().map(|x| b.iter().position(|y| y == x).unwrap()).collect();
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn pair_without(big: Complex, missing: &[(usize, &str)]) -> ComplexPair {
    let top = big.dim().unwrap();
    let mut mask: Vec<Vec<bool>> = (0..=top).map(|q| vec![true; big.n_cells(q)]).collect();
    for &(q, label) in missing {
        let i = big.index_of(q, &CellKey::label(label)).unwrap();
        mask[q][i] = false;
    }
    ComplexPair::from_mask(big, mask).unwrap()
}

/// Kron worked example: K lacks the edge [14] and all triangles.
pub fn kron_example() -> ComplexPair {
    let big = oriented_simplicial(&[
        &["1", "2", "3", "4"],
        &["12", "24", "14", "13", "34", "23"],
        &["124", "143", "234"],
    ]);
    pair_without(big, &[(1, "14"), (2, "124"), (2, "143"), (2, "234")])
}

pub const KRON_B_LK: [[i32; 2]; 5] = [[1, 0], [1, -1], [-1, 0], [-1, 1], [0, 1]];

/// Möbius band from five triangles; K is its boundary circle.
pub fn mobius() -> ComplexPair {
    let tris: Vec<Vec<u32>> = vec![vec![1, 3, 4], vec![1, 2, 4], vec![2, 4, 5], vec![2, 3, 5], vec![1, 3, 5]];
    let big = Complex::simplicial(tris).unwrap();
    let k_edges: Vec<Vec<u32>> = vec![vec![3, 4], vec![1, 2], vec![4, 5], vec![2, 3], vec![1, 5]];
    let mut mask: Vec<Vec<bool>> = (0..=2).map(|q| vec![false; big.n_cells(q)]).collect();
    mask[0] = vec![true; big.n_cells(0)];
    for e in k_edges {
        mask[1][big.index_of(1, &CellKey::simplex(e)).unwrap()] = true;
    }
    ComplexPair::from_mask(big, mask).unwrap()
}

/// Vertex label of the 3×3 grid of the cubical example (y up).
pub fn grid_label(x: i64, y: i64) -> u32 {
    [[7, 8, 9], [4, 5, 6], [1, 2, 3]][y as usize][x as usize]
}

pub fn grid_point(label: u32) -> (i64, i64) {
    for y in 0..3 {
        for x in 0..3 {
            if grid_label(x, y) == label {
                return (x, y);
            }
        }
    }
    panic!("no vertex {label}")
}

/// The edge between two labelled grid vertices as a cube.
pub fn grid_edge(a: u32, b: u32) -> CellKey {
    let (pa, pb) = (grid_point(a), grid_point(b));
    let (x0, y0) = (pa.0.min(pb.0), pa.1.min(pb.1));
    CellKey::Cube(Cube::new(vec![x0, y0], vec![pa.0 != pb.0, pa.1 != pb.1]))
}

pub const CUBE_ROWS: [(u32, u32); 11] = [
    (1, 2),
    (2, 3),
    (4, 1),
    (6, 3),
    (4, 5),
    (5, 6),
    (7, 4),
    (8, 5),
    (9, 6),
    (7, 8),
    (8, 9),
];

pub const CUBE_B_LK: [[i32; 3]; 11] = [
    [-1, 0, 0],
    [-1, 0, 0],
    [-1, 0, 0],
    [1, 0, 0],
    [1, -1, 0],
    [1, 0, -1],
    [0, -1, 0],
    [0, 1, -1],
    [0, 0, 1],
    [0, 1, 0],
    [0, 0, 1],
];

/// Four unit squares on a 3×3 vertex grid; K lacks the edge [52] and the
/// squares.
pub fn cubical_example() -> ComplexPair {
    let squares = (0..2).flat_map(|x| (0..2).map(move |y| Cube::square(x, y)));
    let big = Complex::cubical(squares).unwrap();
    let mut mask: Vec<Vec<bool>> = (0..=2).map(|q| vec![true; big.n_cells(q)]).collect();
    mask[2] = vec![false; big.n_cells(2)];
    mask[1][big.index_of(1, &grid_edge(5, 2)).unwrap()] = false;
    ComplexPair::from_mask(big, mask).unwrap()
}

/// The same pair with edges labelled and ordered as printed, [52] last,
/// squares top-left, top-right, bottom-left, bottom-right.
pub fn cubical_example_explicit() -> ComplexPair {
    let cubical = cubical_example();
    let src = cubical.big();
    let vertices: Vec<String> = (1..=9).map(|v| v.to_string()).collect();
    let mut edges: Vec<(u32, u32)> = CUBE_ROWS.to_vec();
    edges.push((5, 2));
    let edge_labels: Vec<String> = edges.iter().map(|(a, b)| format!("{a}{b}")).collect();
    let squares = [Cube::square(0, 1), Cube::square(1, 1), Cube::square(0, 0), Cube::square(1, 0)];
    // a label "ab" runs from a to b
    let b1: Vec<Vec<(usize, i32)>> = edges
        .iter()
        .map(|&(a, b)| vec![((a - 1) as usize, -1), ((b - 1) as usize, 1)])
        .collect();
    let b2: Vec<Vec<(usize, i32)>> = squares
        .iter()
        .map(|sq| {
            let j = src.index_of(2, &CellKey::Cube(sq.clone())).unwrap();
            let b = src.boundary_matrix(2).unwrap();
            b.col_entries(j)
                .into_iter()
                .map(|(i, v)| {
                    let key = src.cell(1, i);
                    let e = edges.iter().position(|&(a, b)| &grid_edge(a, b) == key).unwrap();
                    let (pa, pb) = (grid_point(edges[e].0), grid_point(edges[e].1));
                    (e, if pa < pb { v } else { -v })
                })
                .collect()
        })
        .collect();
    let big = Complex::from_boundaries(
        vec![
            vertices,
            edge_labels,
            vec!["tl".into(), "tr".into(), "bl".into(), "br".into()],
        ],
        vec![CscMatrix::from_columns(9, b1), CscMatrix::from_columns(12, b2)],
    )
    .unwrap();
    let mut mask = vec![vec![true; 9], vec![true; 12], vec![false; 4]];
    mask[1][11] = false;
    ComplexPair::from_mask(big, mask).unwrap()
}

/// Standard (q+1)-simplex with `K = L`.
pub fn full_simplex(q: usize) -> ComplexPair {
    let s: Vec<u32> = (0..(q + 2) as u32).collect();
    ComplexPair::full(Complex::simplicial(vec![s]).unwrap())
}

/// Fan triangulation of an n-gon around a centre vertex, K = boundary cycle.
pub fn ngon(n: u32) -> ComplexPair {
    let tris: Vec<Vec<u32>> = (0..n).map(|i| vec![i, (i + 1) % n, n]).collect();
    let big = Complex::simplicial(tris).unwrap();
    let mut mask: Vec<Vec<bool>> = (0..=2).map(|q| vec![false; big.n_cells(q)]).collect();
    for (i, c) in big.cells(0).iter().enumerate() {
        mask[0][i] = *c != CellKey::simplex(vec![n]);
    }
    for (i, c) in big.cells(1).iter().enumerate() {
        if let CellKey::Simplex(v) = c {
            mask[1][i] = !v.contains(&n);
        }
    }
    ComplexPair::from_mask(big, mask).unwrap()
}

// ------------------------------------------------------- random instances

pub fn random_nb_matrix(rng: &mut ChaCha8Rng, k: usize, l: usize) -> NonBranchingMatrix {
    let mut rows = Vec::with_capacity(k);
    for _ in 0..k {
        let nnz = if l < 2 { rng.gen_range(0..=l) } else { *[0, 1, 2, 2, 2].choose(rng).unwrap() };
        let mut cols: Vec<usize> = (0..l).collect();
        cols.shuffle(rng);
        let mut row: Vec<(usize, i64)> = cols[..nnz]
            .iter()
            .map(|&c| (c, if rng.gen_bool(0.5) { 1 } else { -1 }))
            .collect();
        row.sort();
        rows.push(row);
    }
    NonBranchingMatrix::from_rows(l, &rows).unwrap()
}

/// A random graph-like matrix with many regulable components: rows are
/// oriented edges of a sparse random graph.
pub fn random_oriented_matrix(rng: &mut ChaCha8Rng, k: usize, l: usize) -> NonBranchingMatrix {
    let mut rows = Vec::with_capacity(k);
    for _ in 0..k {
        let a = rng.gen_range(0..l);
        let mut b = rng.gen_range(0..l);
        while b == a {
            b = rng.gen_range(0..l);
        }
        let s = if rng.gen_bool(0.5) { 1 } else { -1 };
        let mut row = vec![(a, s), (b, -s)];
        row.sort();
        rows.push(row);
    }
    NonBranchingMatrix::from_rows(l, &rows).unwrap()
}

pub enum Surface {
    Disk,
    Annulus,
    Mobius,
    Torus,
}

/// Triangulated a × b grid with optional identifications of its sides.
pub fn surface(kind: Surface, a: u32, b: u32) -> Complex {
    let (wrap_x, twist, wrap_y) = match kind {
        Surface::Disk => (false, false, false),
        Surface::Annulus => (true, false, false),
        Surface::Mobius => (true, true, false),
        Surface::Torus => (true, false, true),
    };
    let v = |i: u32, j: u32| -> u32 {
        let (mut i, mut j) = (i, j);
        if wrap_y && j == b {
            j = 0;
        }
        if wrap_x && i == a {
            i = 0;
            if twist {
                j = b - j;
            }
        }
        i * (b + 1) + j
    };
    let mut tris = Vec::new();
    for i in 0..a {
        for j in 0..b {
            tris.push(vec![v(i, j), v(i + 1, j), v(i + 1, j + 1)]);
            tris.push(vec![v(i, j), v(i, j + 1), v(i + 1, j + 1)]);
        }
    }
    for t in &tris {
        assert!(t[0] != t[1] && t[1] != t[2] && t[0] != t[2], "degenerate triangle");
    }
    Complex::simplicial(tris).unwrap()
}

/// Random cubical complex: each square of a w × h grid kept with
/// probability `p`.
pub fn random_cubical(rng: &mut ChaCha8Rng, w: i64, h: i64, p: f64) -> Complex {
    let mut squares = Vec::new();
    for x in 0..w {
        for y in 0..h {
            if rng.gen_bool(p) {
                squares.push(Cube::square(x, y));
            }
        }
    }
    if squares.is_empty() {
        squares.push(Cube::square(0, 0));
    }
    Complex::cubical(squares).unwrap()
}

/// Cycle graph on `n` vertices (0-non-branching).
pub fn cycle(n: u32) -> Complex {
    Complex::simplicial((0..n).map(|i| vec![i, (i + 1) % n])).unwrap()
}

/// Random subcomplex `K` of `big`: cells of dimension `> q` kept with
/// probability `p_top`, q-cells with `p_q`, then closed under faces.
pub fn random_pair(rng: &mut ChaCha8Rng, big: Complex, q: usize, p_q: f64, p_top: f64) -> ComplexPair {
    let top = big.dim().unwrap_or(0);
    let mut mask: Vec<Vec<bool>> = (0..=top)
        .map(|d| {
            let p = if d > q { p_top } else if d == q { p_q } else { 0.3 };
            (0..big.n_cells(d)).map(|_| rng.gen_bool(p)).collect()
        })
        .collect();
    for d in (1..=top).rev() {
        let b = big.boundary_matrix(d).unwrap();
        for j in 0..big.n_cells(d) {
            if mask[d][j] {
                for &i in b.col(j).0 {
                    mask[d - 1][i] = true;
                }
            }
        }
    }
    ComplexPair::from_mask(big, mask).unwrap()
}

pub fn randomize_weights(rng: &mut ChaCha8Rng, mut c: Complex) -> Complex {
    for q in 0..=c.dim().unwrap_or(0) {
        let w = (0..c.n_cells(q)).map(|_| rng.gen_range(0.25..4.0)).collect();
        c.set_weights(q, w).unwrap();
    }
    c
}

/// A random non-branching pair from one of several families.
pub fn random_family_pair(rng: &mut ChaCha8Rng, weighted: bool) -> (ComplexPair, usize) {
    let family = rng.gen_range(0..6);
    let (big, q) = match family {
        0 => (surface(Surface::Disk, rng.gen_range(1..4), rng.gen_range(1..4)), 1),
        1 => (surface(Surface::Annulus, rng.gen_range(3..5), rng.gen_range(1..3)), 1),
        2 => (surface(Surface::Mobius, rng.gen_range(3..5), rng.gen_range(1..3)), 1),
        3 => (surface(Surface::Torus, 3, 3), 1),
        4 => {
            let (w, h) = (rng.gen_range(1..5), rng.gen_range(1..4));
            (random_cubical(rng, w, h, 0.7), 1)
        }
        _ => (cycle(rng.gen_range(3..12)), 0),
    };
    let big = if weighted { randomize_weights(rng, big) } else { big };
    let p_q = rng.gen_range(0.3..0.95);
    let p_top = rng.gen_range(0.0..0.4);
    (random_pair(rng, big, q, p_q, p_top), q)
}

// ---------------------------------------------------------------- oracles

/// Connected components of the column graph by breadth-first search.
pub fn bfs_components(m: &NonBranchingMatrix) -> Vec<Vec<usize>> {
    let l = m.n_cols();
    let mut adj = vec![Vec::new(); l];
    for i in 0..m.n_rows() {
        if let [a, b] = m.row(i).0 {
            adj[*a].push(*b);
            adj[*b].push(*a);
        }
    }
    let mut seen = vec![false; l];
    let mut comps = Vec::new();
    for s in 0..l {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    comp.push(y);
                    queue.push_back(y);
                }
            }
        }
        comp.sort();
        comps.push(comp);
    }
    comps
}

/// Rank by exact fraction-free elimination.
pub fn exact_rank(a: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let (mut r, mut prev) = (0, 1i128);
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in (c..cols).rev() {
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
            }
        }
        prev = m[r][c];
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

pub fn csc_dense_i64(b: &CscMatrix<i32>) -> Vec<Vec<i64>> {
    let mut out = vec![vec![0; b.n_cols()]; b.n_rows()];
    for (i, j, v) in b.triplets() {
        out[i][j] = v as i64;
    }
    out
}

pub fn select(a: &[Vec<i64>], rows: &[usize], cols: &[usize]) -> Vec<Vec<i64>> {
    rows.iter().map(|&i| cols.iter().map(|&j| a[i][j]).collect()).collect()
}

/// Persistent Betti number from exact ranks:
/// `n_q^K − rank B_q^K − nullity D + nullity B_{q+1}^L`.
pub fn exact_persistent_betti(pair: &ComplexPair, q: usize) -> usize {
    let big = pair.big();
    let k_q = pair.k_indices(q);
    let rank_bq = if q == 0 {
        0
    } else {
        let b = csc_dense_i64(&big.boundary_matrix(q).unwrap());
        exact_rank(&select(&b, &pair.k_indices(q - 1), &k_q))
    };
    let up = csc_dense_i64(&big.boundary_matrix(q + 1).unwrap());
    let l = big.n_cells(q + 1);
    let all: Vec<usize> = (0..l).collect();
    let d = select(&up, &pair.lk_indices(q), &all);
    let nullity_d = l - exact_rank(&d);
    let nullity_b = l - exact_rank(&up);
    k_q.len() + nullity_b - rank_bq - nullity_d
}

/// Null-space basis (columns) of a dense matrix from its SVD.
pub fn null_space(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.ncols();
    if a.nrows() == 0 {
        return DMatrix::identity(n, n);
    }
    let padded = if a.nrows() < n {
        let mut p = DMatrix::zeros(n, n);
        p.view_mut((0, 0), (a.nrows(), n)).copy_from(a);
        p
    } else {
        a.clone()
    };
    let svd = padded.svd(false, true);
    let vt = svd.v_t.unwrap();
    let cols: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] <= 1e-9)
        .collect();
    DMatrix::from_fn(n, cols.len(), |i, j| vt[(cols[j], i)])
}

/// `Δ_{q,up}^{K,L}` from its definition with an arbitrary kernel basis `Z`
/// of `D`: `B' W' B'ᵀ (W_q^K)⁻¹`, `B' = B(I_K, :) Z`, `W' = (Zᵀ W⁻¹ Z)⁻¹`.
pub fn definition_up_laplacian(pair: &ComplexPair, q: usize) -> DMatrix<f64> {
    let big = pair.big();
    let b = big.boundary_matrix(q + 1).unwrap().to_f64().to_dense();
    let k = pair.k_indices(q);
    let lk = pair.lk_indices(q);
    let l = b.ncols();
    let d = DMatrix::from_fn(lk.len(), l, |i, j| b[(lk[i], j)]);
    let z = null_space(&d);
    let w1 = big.weights(q + 1);
    let wq = big.weights(q);
    let winv = DMatrix::from_fn(l, l, |i, j| if i == j { 1.0 / w1[i] } else { 0.0 });
    let inner = (z.transpose() * winv * &z).try_inverse().unwrap_or_else(|| DMatrix::zeros(0, 0));
    let bk = DMatrix::from_fn(k.len(), l, |i, j| b[(k[i], j)]) * &z;
    let mut delta = &bk * inner * bk.transpose();
    for j in 0..k.len() {
        let s = 1.0 / wq[k[j]];
        delta.column_mut(j).iter_mut().for_each(|x| *x *= s);
    }
    delta
}

/// Eigenvalues of `W^{-1/2} … W^{1/2}`-similar matrices `A = S diag(w)⁻¹`.
pub fn symmetric_spectrum(a: &DMatrix<f64>, w: &[f64]) -> Vec<f64> {
    let n = a.nrows();
    let s = DMatrix::from_fn(n, n, |i, j| a[(i, j)] * (w[j] / w[i]).sqrt());
    let s = (&s + s.transpose()) * 0.5;
    let mut ev: Vec<f64> = s.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|x, y| y.total_cmp(x));
    ev
}

pub fn nonzero(values: &[f64], rel: f64) -> Vec<f64> {
    let max = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    values.iter().copied().filter(|v| v.abs() > rel * max.max(1e-300)).collect()
}

pub fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1e-300)
}

pub fn dense_to_csc(a: &DMatrix<f64>) -> CscMatrix<f64> {
    let cols = (0..a.ncols())
        .map(|j| (0..a.nrows()).filter(|&i| a[(i, j)] != 0.0).map(|i| (i, a[(i, j)])).collect())
        .collect();
    CscMatrix::from_columns(a.nrows(), cols)
}

/// Random sparse factor shaped like `M`: ±1 pattern with at most two
/// nonzeros per row, scaled by positive row and column weights.
pub fn random_factor(r: &mut ChaCha8Rng, m: usize, n: usize) -> CscMatrix<f64> {
    let d = random_nb_matrix(r, m, n);
    let rw: Vec<f64> = (0..m).map(|_| r.gen_range(0.3..3.0)).collect();
    let cw: Vec<f64> = (0..n).map(|_| r.gen_range(0.3..3.0)).collect();
    let dense = d.to_dense();
    let a = DMatrix::from_fn(m, n, |i, j| dense[i][j] as f64 * rw[i] * cw[j]);
    dense_to_csc(&a)
}

/// `k × (k+1)` star: row `i` joins column 0 (+1) and column `i+1` (−1).
pub fn star(k: usize) -> NonBranchingMatrix {
    let t: Vec<(usize, usize, i64)> = (0..k).flat_map(|i| [(i, 0, 1), (i, i + 1, -1)]).collect();
    NonBranchingMatrix::from_triplets(k, k + 1, &t).unwrap()
}

/// Fitted slope of `log t` against `log k`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}
