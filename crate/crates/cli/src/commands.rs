use std::fmt::Write as _;
use std::path::Path;

use anyhow::Result;
use log::info;
use nblap::complexes::{cell_values, cube_filtration, cubical_from_image, max_pool, ComplexPair};
use nblap::format::fmt_f64;
use nblap::kron::{cheeger_bounds, polyhedron_stats, to_hypergraph};
use nblap::nbmatrix::{weak_reduce, write_nb_matrix, write_reduction_sidecar};
use nblap::persistence::{up_bundle, ColumnKind, UpLaplacianBundle};
use serde_json::{json, Value};

use crate::config::{ConfigError, Order, RunConfig};
use crate::output::{emit, emit_files, emit_json, emit_spectra, is_json, StepSpectrum};
use crate::spectra::{filtration_bundles, filtration_spectra, spectrum, TimedBundle};
use crate::load;

pub fn reduce(cfg: &RunConfig, input: &Path) -> Result<()> {
    let d = load::matrix(input)?;
    let red = weak_reduce(&d);
    info!("{}x{} matrix, rank {}", d.n_rows(), d.n_cols(), red.rank());
    if is_json(cfg) {
        let components: Vec<Value> = red
            .partition
            .components
            .iter()
            .enumerate()
            .map(|(id, c)| json!({"id": id, "kind": c.kind.as_str(), "cols": c.cols}))
            .collect();
        let kernel: Vec<Value> = red
            .kernel_cols
            .iter()
            .map(|&j| {
                let support: Vec<(usize, i8)> = red.v.column(j).into_iter().map(|i| (i, red.e[i])).collect();
                json!({"column": j, "support": support})
            })
            .collect();
        let r: Vec<(usize, usize, i8)> = red.r.triplets().collect();
        return emit_json(
            cfg,
            &json!({
                "rows": d.n_rows(),
                "cols": d.n_cols(),
                "rank": red.rank(),
                "kernel_cols": red.kernel_cols,
                "components": components,
                "kernel": kernel,
                "r": r,
            }),
        );
    }
    emit_files(
        cfg,
        &[
            ("r.txt".into(), write_nb_matrix(&red.r)),
            ("components.txt".into(), write_reduction_sidecar(&red)),
        ],
    )
}

fn row_labels(pair: &ComplexPair, b: &UpLaplacianBundle) -> Vec<String> {
    b.k_cells.iter().map(|&i| pair.big().cell(b.q, i).to_string()).collect()
}

fn bundle_files(pair: &ComplexPair, b: &UpLaplacianBundle, prefix: &str) -> Vec<(String, String)> {
    let mut rows = String::new();
    for l in row_labels(pair, b) {
        let _ = writeln!(rows, "{l}");
    }
    let mut files = vec![
        (format!("{prefix}rows.txt"), rows),
        (format!("{prefix}b_lk.txt"), b.b_lk_text()),
        (format!("{prefix}m.txt"), b.m_text()),
        (format!("{prefix}w_lk.txt"), b.w_lk_text()),
    ];
    if let Some(csv) = b.delta_csv() {
        files.push((format!("{prefix}delta.csv"), csv));
    }
    files
}

fn bundle_json(pair: &ComplexPair, b: &UpLaplacianBundle) -> Value {
    let columns: Vec<Value> = b
        .columns
        .iter()
        .map(|c| {
            let kind = match c.kind {
                ColumnKind::Component => "component",
                ColumnKind::Cell => "cell",
            };
            json!({"kind": kind, "representative": c.representative, "volume": c.volume})
        })
        .collect();
    let b_lk: Vec<(usize, usize, i32)> = b.b_lk.triplets().collect();
    let m: Vec<(usize, usize, f64)> = b.m.triplets().collect();
    let mut v = json!({
        "q": b.q,
        "rows": row_labels(pair, b),
        "columns": columns,
        "b_lk": b_lk,
        "w_lk": b.w_lk,
        "w_q": b.w_q,
        "m": m,
    });
    if let Some(d) = &b.delta {
        let rows: Vec<Vec<f64>> = (0..d.nrows()).map(|i| d.row(i).iter().copied().collect()).collect();
        v["delta"] = json!(rows);
    }
    v
}

pub fn laplacian(cfg: &RunConfig, complex: &Path, sub: Option<&Path>) -> Result<()> {
    let pair = load::pair(complex, sub)?;
    let b = up_bundle(&pair, cfg.q, cfg.materialize_delta)?;
    info!("B_LK is {}x{}", b.n_k(), b.n_columns());
    if is_json(cfg) {
        emit_json(cfg, &bundle_json(&pair, &b))
    } else {
        emit_files(cfg, &bundle_files(&pair, &b, ""))
    }
}

pub fn spectrum_cmd(cfg: &RunConfig, complex: &Path, sub: Option<&Path>) -> Result<()> {
    let pair = load::pair(complex, sub)?;
    let b = up_bundle(&pair, cfg.q, cfg.materialize_delta || cfg.oracle)?;
    let result = spectrum(&b, cfg)?;
    info!("solver {} ran {} iterations", result.solver, result.iterations);
    emit_spectra(
        cfg,
        &[StepSpectrum {
            step: 0,
            seconds: None,
            result,
        }],
    )
}

fn emit_bundles(cfg: &RunConfig, pair: &ComplexPair, bundles: &[TimedBundle]) -> Result<()> {
    if is_json(cfg) {
        let steps: Vec<Value> = bundles
            .iter()
            .map(|t| {
                let mut v = bundle_json(pair, &t.bundle);
                v["step"] = json!(t.step);
                v["seconds"] = json!(t.seconds);
                v
            })
            .collect();
        return emit_json(cfg, &json!({ "q": cfg.q, "steps": steps }));
    }
    let mut files = Vec::new();
    let mut times = String::from("step,seconds\n");
    for t in bundles {
        files.extend(bundle_files(pair, &t.bundle, &format!("step-{}.", t.step)));
        let _ = writeln!(times, "{},{:.6}", t.step, t.seconds);
    }
    files.push(("times.csv".into(), times));
    emit_files(cfg, &files)
}

/// Runs the filtration from `K` to `L` adding the q-cells of `L \ K` in
/// the configured order; `values` ranks cells for `--order value`.
fn run_filtration(cfg: &RunConfig, pair: &ComplexPair, values: &[f64], bundles_only: bool) -> Result<()> {
    let pair = pair.with_lower_skeleton(cfg.q);
    let order = match cfg.order {
        Order::Lex => None,
        Order::Value => Some(values),
    };
    let steps = cube_filtration(&pair, cfg.q, order)?;
    info!("{} cells to add", steps.len());
    let bundles = filtration_bundles(&pair, cfg, &steps)?;
    if bundles_only {
        return emit_bundles(cfg, &pair, &bundles);
    }
    let spectra = filtration_spectra(&bundles, cfg)?;
    emit_spectra(cfg, &spectra)
}

pub fn filtration(cfg: &RunConfig, complex: &Path, sub: Option<&Path>, bundles_only: bool) -> Result<()> {
    let pair = load::pair(complex, sub)?;
    let values = if pair.big().dim().is_some_and(|d| d >= cfg.q) {
        pair.big().weights(cfg.q).to_vec()
    } else {
        Vec::new()
    };
    run_filtration(cfg, &pair, &values, bundles_only)
}

pub fn image(cfg: &RunConfig, input: &Path, pool: usize, bundles_only: bool) -> Result<()> {
    let (tk, tl) = cfg
        .thresholds
        .ok_or_else(|| ConfigError("image needs --tk and --tl".into()))?;
    let mut img = load::image(input)?;
    for _ in 0..pool {
        img = max_pool(&img)?;
    }
    info!("{}x{} image, thresholds ({tk}, {tl})", img.width(), img.height());
    let small = cubical_from_image(&img, tk);
    let big = cubical_from_image(&img, tl);
    let values = if big.dim().is_some_and(|d| d >= cfg.q) {
        cell_values(&img, &big, cfg.q)?
    } else {
        Vec::new()
    };
    let pair = ComplexPair::new(big, &small)?;
    run_filtration(cfg, &pair, &values, bundles_only)
}

fn opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

pub fn cheeger(cfg: &RunConfig, complex: &Path, sub: Option<&Path>, hypergraph: Option<&Path>) -> Result<()> {
    let pair = load::pair(complex, sub)?;
    let b = up_bundle(&pair, cfg.q, false)?;
    let stats = polyhedron_stats(&b);
    let rep = cheeger_bounds(&b, &stats, cfg.seed)?;
    if let Some(path) = hypergraph {
        let h = to_hypergraph(&b)?;
        std::fs::write(path, h.to_text(Some(&row_labels(&pair, &b))))?;
    }
    if !rep.upper_valid {
        info!("upper bound hypotheses unmet: full column rank {}, nonzero {}", rep.full_column_rank, rep.nonzero);
    }
    if is_json(cfg) {
        let mut v = serde_json::to_value(&rep)?;
        v["volume"] = json!(stats.volume);
        v["area"] = json!(stats.area);
        v["interior"] = json!(stats.interior);
        return emit_json(cfg, &v);
    }
    let text = format!(
        "lower,upper,lambda_min,full_column_rank,nonzero,upper_valid,dimension_cap\n{},{},{},{},{},{},{}\n",
        opt(rep.lower),
        opt(rep.upper),
        opt(rep.lambda_min),
        rep.full_column_rank,
        rep.nonzero,
        rep.upper_valid,
        opt(rep.dimension_cap)
    );
    emit(cfg, &text)
}
