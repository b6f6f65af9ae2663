use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const GOLDEN: &str = "nb-matrix v1 6 7 12\n0 0 1\n0 2 -1\n1 2 1\n1 4 -1\n2 1 -1\n2 3 1\n3 0 -1\n3 4 1\n4 3 1\n4 5 -1\n5 3 1\n5 6 -1\n";

const KRON_L: &str = "complex v1 simplicial\ncells q=0\n1\n2\n3\n4\ncells q=1\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\ncells q=2\n1 2 4\n1 3 4\n2 3 4\n";
const KRON_K: &str = "complex v1 simplicial\ncells q=0\n1\n2\n3\n4\ncells q=1\n1 2\n1 3\n2 3\n2 4\n3 4\n";

fn nblap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nblap"))
        .args(args)
        .env_remove("NBLAP_LOG")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "failed: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn data_rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines().skip(1).map(|l| l.split(',').map(String::from).collect()).collect()
}

/// CSV with the trailing `seconds` column removed.
fn without_times(csv: &str) -> String {
    csv.lines().map(|l| l.rsplit_once(',').unwrap().0).collect::<Vec<_>>().join("\n")
}

#[test]
fn reduce_lists_two_regulable_components() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "golden.txt", GOLDEN);
    let out = stdout(&nblap(&["reduce", s(&m)]));
    assert!(out.contains("component 0 regulable cols=0,2,4\n"));
    assert!(out.contains("component 1 regulable cols=1,3,5,6\n"));
    assert!(out.contains("kernel 4 support=0:1,2:1,4:1\n"));

    let out_dir = dir.path().join("red");
    stdout(&nblap(&["reduce", s(&m), "--out", s(&out_dir)]));
    let r = std::fs::read_to_string(out_dir.join("r.txt")).unwrap();
    assert!(r.starts_with("nb-matrix v1 6 7 9\n"));
    assert!(out_dir.join("components.txt").exists());

    let json: serde_json::Value = serde_json::from_str(&stdout(&nblap(&["reduce", s(&m), "--format", "json"]))).unwrap();
    assert_eq!(json["rank"], 5);
    assert_eq!(json["kernel_cols"], serde_json::json!([4, 6]));
}

#[test]
fn reduce_empty_matrix() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "empty.txt", "nb-matrix v1 0 0 0\n");
    let out = stdout(&nblap(&["reduce", s(&m)]));
    assert!(out.contains("nb-matrix v1 0 0 0\n"));
    assert!(!out.contains("component 0"));
}

#[test]
fn reduce_exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "nb-matrix v1 1 3 3\n0 0 1\n0 1 1\n0 2 1\n");
    let o = nblap(&["reduce", s(&bad)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("row 0"));
    let garbled = write(&dir, "garbled.txt", "matrix\n");
    assert_eq!(nblap(&["reduce", s(&garbled)]).status.code(), Some(2));
    assert_eq!(nblap(&["reduce", "/nonexistent/file"]).status.code(), Some(2));
    assert_eq!(nblap(&["reduce"]).status.code(), Some(2));
}

#[test]
fn image_checkerboard_gives_one_row_per_step() {
    let dir = TempDir::new().unwrap();
    let csv = write(&dir, "cb.csv", "0,255\n255,0\n");
    let pgm = write(&dir, "cb.pgm", "P2\n2 2\n255\n0 255\n255 0\n");
    let mut outputs = Vec::new();
    for img in [&csv, &pgm] {
        let out = stdout(&nblap(&["image", s(img), "--tk", "1", "--tl", "256", "--k", "1"]));
        assert!(out.starts_with("step,index,singular_value,eigenvalue,converged,seconds\n"));
        let rows = data_rows(&out);
        assert_eq!(rows.len(), 5);
        let steps: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
        assert_eq!(steps, vec!["0", "1", "2", "3", "4"]);
        outputs.push(without_times(&out));
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn image_uniform_and_bad_thresholds() {
    let dir = TempDir::new().unwrap();
    let img = write(&dir, "u.csv", "0,0\n0,0\n");
    let out = stdout(&nblap(&["image", s(&img), "--tk", "1", "--tl", "1", "--k", "1", "--format", "json"]));
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(json["steps"].as_array().unwrap().len(), 1);

    let blank = write(&dir, "blank.csv", "200,200\n200,200\n");
    let out = stdout(&nblap(&["image", s(&blank), "--tk", "1", "--tl", "1", "--format", "json"]));
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(json["steps"].as_array().unwrap().len(), 1);

    let o = nblap(&["image", s(&img), "--tk", "5", "--tl", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(nblap(&["image", s(&img)]).status.code(), Some(2));
    let broken = write(&dir, "broken.pgm", "P2\n2 2\n255\n0 1\n");
    assert_eq!(nblap(&["image", s(&broken), "--tk", "1", "--tl", "2"]).status.code(), Some(2));
}

#[test]
fn image_value_order_and_pooling() {
    let dir = TempDir::new().unwrap();
    let img = write(&dir, "ramp.csv", "0,10,20,30\n40,50,60,70\n80,90,100,110\n120,130,140,150\n");
    let lex = stdout(&nblap(&["image", s(&img), "--tk", "50", "--tl", "200", "--k", "1"]));
    let val = stdout(&nblap(&["image", s(&img), "--tk", "50", "--tl", "200", "--k", "1", "--order", "value"]));
    assert_eq!(data_rows(&lex).len(), data_rows(&val).len());
    // both end at the same pair
    let last = |csv: &str| data_rows(csv).last().unwrap()[..4].to_vec();
    assert_eq!(last(&lex), last(&val));
    let pooled = stdout(&nblap(&["image", s(&img), "--tk", "60", "--tl", "200", "--pool", "1", "--k", "1"]));
    // 2×2 pooled image (50,70,130,150): K has one square, L all four
    assert_eq!(data_rows(&pooled).len(), 12 - 4 + 1);
}

#[test]
fn laplacian_exports_the_bundle() {
    let dir = TempDir::new().unwrap();
    let l = write(&dir, "L.txt", KRON_L);
    let k = write(&dir, "K.txt", KRON_K);
    let out_dir = dir.path().join("b");
    stdout(&nblap(&["laplacian", s(&l), "--sub", s(&k), "--materialize-delta", "--out", s(&out_dir)]));
    let read = |n: &str| std::fs::read_to_string(out_dir.join(n)).unwrap();
    assert_eq!(read("w_lk.txt"), "diag v1 2\n0.5\n1.0\n");
    assert!(read("b_lk.txt").starts_with("triplet v1 int 5 2 7\n"));
    assert!(read("m.txt").starts_with("triplet v1 real 5 2 7\n"));
    assert_eq!(read("rows.txt"), "1 2\n1 3\n2 3\n2 4\n3 4\n");
    assert_eq!(read("delta.csv").lines().count(), 5);

    let json: serde_json::Value =
        serde_json::from_str(&stdout(&nblap(&["laplacian", s(&l), "--sub", s(&k), "--format", "json"]))).unwrap();
    assert_eq!(json["w_lk"], serde_json::json!([0.5, 1.0]));
    assert_eq!(json["columns"][0]["kind"], "component");
    assert_eq!(json["columns"][0]["volume"], 2);
}

#[test]
fn spectrum_of_the_worked_pair() {
    let dir = TempDir::new().unwrap();
    let l = write(&dir, "L.txt", KRON_L);
    let k = write(&dir, "K.txt", KRON_K);
    let check = |extra: &[&str]| {
        let mut args = vec!["spectrum", s(&l), "--sub", s(&k), "--k", "2"];
        args.extend_from_slice(extra);
        let out = stdout(&nblap(&args));
        assert!(out.starts_with("step,index,singular_value,eigenvalue,converged\n"));
        let ev: Vec<f64> = data_rows(&out).iter().map(|r| r[3].parse().unwrap()).collect();
        assert_eq!(ev.len(), 2, "{extra:?}");
        assert!((ev[0] - 4.0).abs() < 1e-10 && (ev[1] - 1.0).abs() < 1e-10, "{extra:?}: {ev:?}");
    };
    check(&[]);
    check(&["--which", "bottom"]);
    check(&["--oracle"]);
    check(&["--no-reorth"]);
    for solver in ["gkl", "full-bidiag", "gram", "dense"] {
        check(&["--solver", solver]);
    }
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&nblap(&["spectrum", s(&l), "--sub", s(&k), "--k", "2", "--format", "json", "--seed", "7"])))
            .unwrap();
    assert_eq!(json["seed"], 7);
    assert_eq!(json["which"], "top");
    assert_eq!(json["steps"][0]["values"][1]["index"], 1);
    assert!(json["steps"][0]["cutoff"].as_f64().unwrap() > 0.0);
    assert_eq!(nblap(&["spectrum", s(&l), "--solver", "nope"]).status.code(), Some(2));
    assert_eq!(nblap(&["spectrum", s(&l), "--k", "0"]).status.code(), Some(2));
}

#[test]
fn complex_violations_exit_4() {
    let dir = TempDir::new().unwrap();
    let cone = write(
        &dir,
        "cone.txt",
        "complex v1 simplicial\ncells q=2\n0 1 2\n0 1 3\n0 1 4\n",
    );
    let o = nblap(&["spectrum", s(&cone)]);
    assert_eq!(o.status.code(), Some(4), "{}", String::from_utf8_lossy(&o.stderr));
    let weighted = write(&dir, "w.txt", &format!("{KRON_L}weights q=2\n1\n2\n3\n"));
    let k = write(&dir, "K.txt", KRON_K);
    assert_eq!(nblap(&["cheeger", s(&weighted), "--sub", s(&k)]).status.code(), Some(4));
    let stray = write(&dir, "stray.txt", "complex v1 simplicial\ncells q=1\n7 8\n");
    assert_eq!(nblap(&["laplacian", s(&weighted), "--sub", s(&stray)]).status.code(), Some(4));
    let garbled = write(&dir, "g.txt", "complex v2\n");
    assert_eq!(nblap(&["laplacian", s(&garbled)]).status.code(), Some(2));
}

#[test]
fn cheeger_report_and_hypergraph() {
    let dir = TempDir::new().unwrap();
    let l = write(&dir, "L.txt", KRON_L);
    let k = write(&dir, "K.txt", KRON_K);
    let h = dir.path().join("h.txt");
    let out = stdout(&nblap(&["cheeger", s(&l), "--sub", s(&k), "--hypergraph", s(&h)]));
    let rows = data_rows(&out);
    assert_eq!(rows[0][0], "1.0");
    assert_eq!(rows[0][1], "2.0");
    assert!((rows[0][2].parse::<f64>().unwrap() - 1.0).abs() < 1e-10);
    assert_eq!(&rows[0][3..], ["true", "true", "true", "3.0"]);
    let text = std::fs::read_to_string(&h).unwrap();
    assert!(text.starts_with("hypergraph v1 5 2\n"));
    assert!(text.contains("edge 0 w=0.5 "));
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&nblap(&["cheeger", s(&l), "--sub", s(&k), "--format", "json"]))).unwrap();
    assert_eq!(json["volume"], serde_json::json!([2, 1]));
    assert_eq!(json["upper_valid"], true);
}

#[test]
fn filtration_is_deterministic_across_runs_and_jobs() {
    let dir = TempDir::new().unwrap();
    let img = write(&dir, "img.csv", "0,90,30,200\n120,10,60,80\n5,70,250,40\n100,20,15,0\n");
    let run = |jobs: &str| {
        let out = stdout(&nblap(&["image", s(&img), "--tk", "50", "--tl", "256", "--k", "3", "--jobs", jobs]));
        without_times(&out)
    };
    let one = run("1");
    assert_eq!(one, run("1"));
    assert_eq!(one, run("4"));
    let steps: Vec<usize> = one.lines().skip(1).map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert!(steps.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn filtration_of_complex_files() {
    let dir = TempDir::new().unwrap();
    let l = write(&dir, "L.txt", KRON_L);
    let k = write(&dir, "K.txt", KRON_K);
    let out = stdout(&nblap(&["filtration", s(&l), "--sub", s(&k), "--k", "2"]));
    assert_eq!(data_rows(&out).len(), 4);
    let out_dir = dir.path().join("f");
    stdout(&nblap(&["filtration", s(&l), "--sub", s(&k), "--bundles", "--out", s(&out_dir)]));
    assert_eq!(std::fs::read_to_string(out_dir.join("step-0.w_lk.txt")).unwrap(), "diag v1 2\n0.5\n1.0\n");
    assert_eq!(std::fs::read_to_string(out_dir.join("step-1.w_lk.txt")).unwrap(), "diag v1 3\n1.0\n1.0\n1.0\n");
    let times = std::fs::read_to_string(out_dir.join("times.csv")).unwrap();
    assert_eq!(times.lines().count(), 3);
}

#[test]
fn bench_reports_rows_and_slopes() {
    let out = stdout(&nblap(&["bench", "--family", "grid", "--sizes", "16", "--reps", "1"]));
    let rows = data_rows(&out);
    let methods: Vec<&str> = rows.iter().map(|r| r[1].as_str()).collect();
    assert_eq!(methods, vec!["weak-reduce", "bundle", "dense-delta", "gaussian"]);
    assert!(rows.iter().all(|r| r[4].is_empty()));

    let out = stdout(&nblap(&["bench", "--family", "ngon", "--sizes", "64,128,256", "--reps", "1"]));
    let rows = data_rows(&out);
    assert_eq!(rows.len(), 12);
    assert!(rows.iter().all(|r| r[4].parse::<f64>().is_ok()));

    let out = stdout(&nblap(&["bench", "--family", "star", "--sizes", "256,512", "--format", "json"]));
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    let names: Vec<&str> = json["methods"].as_array().unwrap().iter().map(|m| m["method"].as_str().unwrap()).collect();
    assert_eq!(names, vec!["weak-reduce", "gaussian"]);

    assert_eq!(nblap(&["bench", "--family", "torus"]).status.code(), Some(2));
    assert_eq!(nblap(&["bench", "--family", "star", "--methods", "magic"]).status.code(), Some(2));
}

#[test]
fn diagnostics_go_to_stderr_only() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "golden.txt", GOLDEN);
    let quiet = nblap(&["reduce", s(&m)]);
    assert!(quiet.stderr.is_empty());
    let loud = Command::new(env!("CARGO_BIN_EXE_nblap"))
        .args(["reduce", s(&m)])
        .env("NBLAP_LOG", "info")
        .output()
        .unwrap();
    assert_eq!(loud.stdout, quiet.stdout);
    assert!(String::from_utf8_lossy(&loud.stderr).contains("rank 5"));
}
