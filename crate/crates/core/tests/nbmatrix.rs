mod common;

use common::*;
use nblap::nbmatrix::{
    classify_components, dsu_components, exact, rank, read_nb_matrix, reorient, weak_reduce, write_nb_matrix,
    write_reduction_sidecar, ComponentKind, MatrixError, MatrixFileError, NonBranchingMatrix,
};
use proptest::prelude::*;

fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| (0..n).map(|j| row.iter().zip(b).map(|(x, r)| x * r[j]).sum()).collect())
        .collect()
}

fn diag(e: &[i8]) -> Vec<Vec<i64>> {
    (0..e.len())
        .map(|i| (0..e.len()).map(|j| if i == j { e[i] as i64 } else { 0 }).collect())
        .collect()
}

#[test]
fn build_accepts_two_entry_rows() {
    let m = NonBranchingMatrix::from_triplets(2, 3, &[(0, 0, 1), (0, 2, -1), (1, 0, 1), (1, 1, -1)]).unwrap();
    assert_eq!(m.row_nnz(0), 2);
    assert_eq!(m.nnz(), 4);
}

#[test]
fn build_rejects_three_entry_rows() {
    let err = NonBranchingMatrix::from_triplets(1, 3, &[(0, 0, 1), (0, 1, 1), (0, 2, 1)]).unwrap_err();
    assert!(matches!(err, MatrixError::NonBranchingViolation { row: 0, .. }));
}

#[test]
fn build_rejects_bad_values_and_duplicates() {
    assert!(matches!(
        NonBranchingMatrix::from_triplets(1, 2, &[(0, 0, 2)]),
        Err(MatrixError::NonBranchingViolation { .. })
    ));
    assert!(matches!(
        NonBranchingMatrix::from_triplets(1, 2, &[(0, 0, 1), (0, 0, -1)]),
        Err(MatrixError::DuplicateEntry { row: 0, col: 0 })
    ));
    assert!(matches!(
        NonBranchingMatrix::from_triplets(1, 2, &[(0, 5, 1)]),
        Err(MatrixError::OutOfBounds { .. })
    ));
}

#[test]
fn golden_matrix_round_trips_through_text() {
    let d = golden_d();
    let text = write_nb_matrix(&d);
    assert!(text.starts_with("nb-matrix v1 6 7 12\n"));
    assert_eq!(read_nb_matrix(&text).unwrap(), d);
    assert_eq!(d.get(0, 0), 1);
    assert_eq!(d.get(0, 2), -1);
    assert_eq!(d.get(2, 1), -1);
}

#[test]
fn text_reader_reports_violations_and_parse_errors() {
    let bad = "nb-matrix v1 1 3 3\n0 0 1\n0 1 1\n0 2 1\n";
    assert!(matches!(read_nb_matrix(bad), Err(MatrixFileError::Matrix(_))));
    assert!(matches!(read_nb_matrix("nb-matrix v1 1 3 2\n0 0 1\n"), Err(MatrixFileError::Parse(_))));
    assert!(matches!(read_nb_matrix("matrix 1 1\n"), Err(MatrixFileError::Parse(_))));
}

#[test]
fn golden_components() {
    let d = golden_d();
    let mut dsu = dsu_components(&d);
    let roots = dsu.roots();
    assert_eq!(roots[0], roots[2]);
    assert_eq!(roots[0], roots[4]);
    assert_eq!(roots[1], roots[3]);
    assert_eq!(roots[1], roots[5]);
    assert_eq!(roots[1], roots[6]);
    assert_ne!(roots[0], roots[1]);
}

#[test]
fn golden_reduction() {
    let d = golden_d();
    let red = weak_reduce(&d);
    assert_eq!(red.r.to_dense(), golden_r());
    assert_eq!(red.v.to_dense(), golden_u7());
    assert_eq!(red.kernel_cols, vec![4, 6]);
    assert_eq!(red.rank(), 5);
    assert_eq!(rank(&d), 5);
    let cols: Vec<Vec<usize>> = red.partition.components.iter().map(|c| c.cols.clone()).collect();
    assert_eq!(cols, vec![vec![0, 2, 4], vec![1, 3, 5, 6]]);
    assert!(red.partition.components.iter().all(|c| c.kind == ComponentKind::Regulable));
}

#[test]
fn golden_sidecar_lists_components() {
    let red = weak_reduce(&golden_d());
    let side = write_reduction_sidecar(&red);
    assert!(side.contains("component 0 regulable cols=0,2,4"));
    assert!(side.contains("component 1 regulable cols=1,3,5,6"));
}

#[test]
fn empty_and_zero_matrices() {
    let z = NonBranchingMatrix::zeros(0, 4);
    let mut dsu = dsu_components(&z);
    assert_eq!(dsu.roots(), vec![0, 1, 2, 3]);
    assert_eq!(rank(&z), 0);
    let red = weak_reduce(&z);
    assert_eq!(red.kernel_cols, vec![0, 1, 2, 3]);
    assert_eq!(red.partition.count(ComponentKind::ZeroColumn), 4);
}

#[test]
fn classification_of_small_examples() {
    for (i, kind) in [(4, ComponentKind::Regulable), (5, ComponentKind::Irregular)] {
        let d = small_d(i);
        let p = classify_components(&d, &dsu_components(&d));
        assert_eq!(p.components.len(), 1);
        assert_eq!(p.components[0].kind, kind, "D_{i}");
    }
    let one = NonBranchingMatrix::from_triplets(1, 3, &[(0, 1, 1)]).unwrap();
    let p = classify_components(&one, &dsu_components(&one));
    let kinds: Vec<_> = p.components.iter().map(|c| c.kind).collect();
    assert_eq!(
        kinds,
        vec![ComponentKind::ZeroColumn, ComponentKind::RowSingular, ComponentKind::ZeroColumn]
    );
}

#[test]
fn reorientation_examples() {
    let (ok, signs) = reorient(&small_d(2));
    assert!(ok);
    assert_eq!(signs, vec![1, -1, 1]);
    let (ok, _) = reorient(&small_d(3));
    assert!(!ok);
    let oriented = NonBranchingMatrix::from_dense(&[vec![1, -1, 0], vec![0, 1, -1]]).unwrap();
    assert_eq!(reorient(&oriented), (true, vec![1, 1, 1]));
}

#[test]
fn signed_permutation_is_its_own_reduction() {
    let d = NonBranchingMatrix::from_dense(&[vec![0, -1, 0], vec![1, 0, 0], vec![0, 0, -1]]).unwrap();
    let red = weak_reduce(&d);
    assert_eq!(red.r, d);
    assert_eq!(red.v.to_dense(), diag(&[1, 1, 1]));
    assert!(red.kernel_cols.is_empty());
}

#[test]
fn mobius_d_has_full_column_rank() {
    let pair = mobius();
    let d = nblap::complexes::extract_d(&pair, 1).unwrap();
    assert_eq!((d.n_rows(), d.n_cols()), (5, 5));
    assert_eq!(rank(&d), 5);
    let red = weak_reduce(&d);
    assert_eq!(red.partition.components.len(), 1);
    assert_eq!(red.partition.components[0].kind, ComponentKind::Irregular);
}

#[test]
fn dsu_matches_bfs_on_random_matrices() {
    let mut r = rng(11);
    for _ in 0..200 {
        let d = random_nb_matrix(&mut r, 40, 40);
        let p = classify_components(&d, &dsu_components(&d));
        let mut ours: Vec<Vec<usize>> = p.components.iter().map(|c| c.cols.clone()).collect();
        ours.sort();
        let mut bfs = bfs_components(&d);
        bfs.sort();
        assert_eq!(ours, bfs);
    }
}

#[test]
fn column_elimination_oracle_agrees_with_bareiss() {
    let mut r = rng(12);
    for _ in 0..200 {
        let d = random_nb_matrix(&mut r, 20, 25);
        assert_eq!(exact::column_elimination_rank(&d), exact_rank(&d.to_dense()));
        assert_eq!(exact::bareiss_rank(&d.to_dense()), exact_rank(&d.to_dense()));
    }
    let s = star(300);
    assert_eq!(exact::column_elimination_rank(&s), 300);
}

fn arb_matrix() -> impl Strategy<Value = NonBranchingMatrix> {
    (0usize..30, 1usize..30, any::<u64>(), prop::bool::ANY).prop_map(|(k, l, seed, graph)| {
        let mut r = rng(seed);
        if graph && l >= 2 {
            random_oriented_matrix(&mut r, k, l)
        } else {
            random_nb_matrix(&mut r, k, l)
        }
    })
}

proptest! {
    #[test]
    fn factorization_is_exact(d in arb_matrix()) {
        let red = weak_reduce(&d);
        let dense = d.to_dense();
        let dev = mul(&mul(&dense, &diag(&red.e)), &red.v.to_dense());
        prop_assert_eq!(dev, red.r.to_dense());
    }

    #[test]
    fn v_is_unit_upper_triangular_with_disjoint_kernel_columns(d in arb_matrix()) {
        let red = weak_reduce(&d);
        let v = red.v.to_dense();
        let l = d.n_cols();
        for i in 0..l {
            prop_assert_eq!(v[i][i], 1);
            for j in 0..i {
                prop_assert_eq!(v[i][j], 0);
            }
        }
        let mut used = vec![false; l];
        let counts = d.column_counts();
        for j in 0..l {
            let support: Vec<usize> = (0..l).filter(|&i| v[i][j] != 0).collect();
            let r_zero = red.r.to_dense().iter().all(|row| row[j] == 0);
            prop_assert_eq!(support.len() > 1, r_zero && counts[j] > 0 && red.v.column(j).len() > 1);
            if support.len() > 1 {
                for &i in &support {
                    prop_assert!(!used[i]);
                    used[i] = true;
                }
            }
        }
    }

    #[test]
    fn kernel_vectors_are_sound_and_complete(d in arb_matrix()) {
        let red = weak_reduce(&d);
        for (_, vec) in red.kernel_basis() {
            let mut x = vec![0i64; d.n_cols()];
            for (i, s) in vec {
                x[i] = s as i64;
            }
            prop_assert!(d.mul_vec_i64(&x).iter().all(|&y| y == 0));
        }
        let nullity = d.n_cols() - exact_rank(&d.to_dense());
        prop_assert_eq!(red.kernel_cols.len(), nullity);
        prop_assert_eq!(rank(&d), d.n_cols() - nullity);
    }

    #[test]
    fn nonzero_columns_of_r_are_independent(d in arb_matrix()) {
        let red = weak_reduce(&d);
        let r = red.r.to_dense();
        let nonzero: Vec<usize> = (0..d.n_cols()).filter(|j| !red.kernel_cols.contains(j)).collect();
        let sub: Vec<Vec<i64>> = r.iter().map(|row| nonzero.iter().map(|&j| row[j]).collect()).collect();
        prop_assert_eq!(exact_rank(&sub), nonzero.len());
    }

    #[test]
    fn orientation_zeroes_regulable_rows(d in arb_matrix()) {
        let red = weak_reduce(&d);
        for c in red.partition.regulable() {
            for &i in &c.rows {
                let (cols, vals) = d.row(i);
                let s: i64 = cols.iter().zip(vals).map(|(&j, &v)| (red.e[j] * v) as i64).sum();
                prop_assert_eq!(s, 0);
            }
        }
    }

    #[test]
    fn find_is_idempotent(d in arb_matrix()) {
        let mut dsu = dsu_components(&d);
        for x in 0..d.n_cols() {
            let r = dsu.find(x);
            prop_assert_eq!(dsu.find(r), r);
            prop_assert_eq!(dsu.parent()[x], r);
        }
    }
}
