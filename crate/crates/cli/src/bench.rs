//! Timing ladders over synthetic families, one registry of families and one
//! of methods.

use std::fmt::Write as _;
use std::hint::black_box;
use std::time::Instant;

use anyhow::Result;
use log::info;
use nblap::complexes::{extract_d, CellKey, Complex, ComplexPair, Cube};
use nblap::nbmatrix::{exact, weak_reduce, NonBranchingMatrix};
use nblap::persistence::up_bundle;
use serde_json::{json, Value};

use crate::config::{ConfigError, RunConfig};
use crate::output::{emit, emit_json, is_json};

/// One benchmark input: the matrix `D`, plus the pair it came from when
/// there is one.
pub struct Instance {
    pub matrix: NonBranchingMatrix,
    pub pair: Option<(ComplexPair, usize)>,
}

impl Instance {
    fn from_pair(pair: ComplexPair, q: usize) -> Result<Self> {
        let matrix = extract_d(&pair, q)?;
        Ok(Self {
            matrix,
            pair: Some((pair, q)),
        })
    }
}

pub trait BenchFamily {
    fn name(&self) -> &'static str;
    fn default_sizes(&self) -> Vec<usize>;
    fn build(&self, size: usize) -> Result<Instance>;
}

pub trait BenchMethod {
    fn name(&self) -> &'static str;
    fn applies(&self, inst: &Instance) -> bool;
    fn run(&self, inst: &Instance) -> Result<()>;
}

/// `k × (k+1)` matrix whose row `i` joins column 0 to column `i + 1`.
pub struct Star;

impl BenchFamily for Star {
    fn name(&self) -> &'static str {
        "star"
    }

    fn default_sizes(&self) -> Vec<usize> {
        vec![1 << 14, 1 << 15, 1 << 16]
    }

    fn build(&self, k: usize) -> Result<Instance> {
        let t: Vec<(usize, usize, i64)> = (0..k).flat_map(|i| [(i, 0, 1), (i, i + 1, -1)]).collect();
        Ok(Instance {
            matrix: NonBranchingMatrix::from_triplets(k, k + 1, &t)?,
            pair: None,
        })
    }
}

/// `n × n` grid of squares with `K` its outer boundary, at `q = 1`.
pub struct Grid;

impl BenchFamily for Grid {
    fn name(&self) -> &'static str {
        "grid"
    }

    fn default_sizes(&self) -> Vec<usize> {
        vec![16, 32, 64]
    }

    fn build(&self, n: usize) -> Result<Instance> {
        let side = n as i64;
        let big = Complex::cubical((0..side).flat_map(|y| (0..side).map(move |x| Cube::square(x, y))))?;
        let on_boundary = |c: &CellKey| match c {
            CellKey::Cube(c) => c
                .anchor
                .iter()
                .zip(&c.extent)
                .any(|(&a, &e)| !e && (a == 0 || a == side)),
            _ => false,
        };
        let mask = (0..=2)
            .map(|q| big.cells(q).iter().map(|c| q < 2 && on_boundary(c)).collect())
            .collect();
        Instance::from_pair(ComplexPair::from_mask(big, mask)?, 1)
    }
}

/// Fan triangulation of an n-gon with `K` its boundary cycle, at `q = 1`.
pub struct Ngon;

impl BenchFamily for Ngon {
    fn name(&self) -> &'static str {
        "ngon"
    }

    fn default_sizes(&self) -> Vec<usize> {
        vec![64, 128, 256]
    }

    fn build(&self, n: usize) -> Result<Instance> {
        if n < 3 {
            return Err(ConfigError(format!("an n-gon needs n >= 3, got {n}")).into());
        }
        let n = n as u32;
        let big = Complex::simplicial((0..n).map(|i| vec![i, (i + 1) % n, n]))?;
        let centre = CellKey::simplex(vec![n]);
        let mask = (0..=2)
            .map(|q| {
                big.cells(q)
                    .iter()
                    .map(|c| match c {
                        CellKey::Simplex(v) if q < 2 => !v.contains(&n) && *c != centre,
                        _ => false,
                    })
                    .collect()
            })
            .collect();
        Instance::from_pair(ComplexPair::from_mask(big, mask)?, 1)
    }
}

/// Union-find weak reduction of `D`.
pub struct WeakReduce;

impl BenchMethod for WeakReduce {
    fn name(&self) -> &'static str {
        "weak-reduce"
    }
    fn applies(&self, _: &Instance) -> bool {
        true
    }
    fn run(&self, inst: &Instance) -> Result<()> {
        black_box(weak_reduce(&inst.matrix));
        Ok(())
    }
}

/// Factor-only up Laplacian bundle.
pub struct Bundle;

impl BenchMethod for Bundle {
    fn name(&self) -> &'static str {
        "bundle"
    }
    fn applies(&self, inst: &Instance) -> bool {
        inst.pair.is_some()
    }
    fn run(&self, inst: &Instance) -> Result<()> {
        let (pair, q) = inst.pair.as_ref().expect("checked by applies");
        black_box(up_bundle(pair, *q, false)?);
        Ok(())
    }
}

/// Bundle with the dense Laplacian materialized.
pub struct DenseDelta;

impl BenchMethod for DenseDelta {
    fn name(&self) -> &'static str {
        "dense-delta"
    }
    fn applies(&self, inst: &Instance) -> bool {
        inst.pair.is_some()
    }
    fn run(&self, inst: &Instance) -> Result<()> {
        let (pair, q) = inst.pair.as_ref().expect("checked by applies");
        black_box(up_bundle(pair, *q, true)?);
        Ok(())
    }
}

/// Exact rank of `D` by integer column elimination.
pub struct Gaussian;

impl BenchMethod for Gaussian {
    fn name(&self) -> &'static str {
        "gaussian"
    }
    fn applies(&self, _: &Instance) -> bool {
        true
    }
    fn run(&self, inst: &Instance) -> Result<()> {
        black_box(exact::column_elimination_rank(&inst.matrix));
        Ok(())
    }
}

pub fn families() -> Vec<Box<dyn BenchFamily>> {
    vec![Box::new(Star), Box::new(Grid), Box::new(Ngon)]
}

pub fn methods() -> Vec<Box<dyn BenchMethod>> {
    vec![Box::new(WeakReduce), Box::new(Bundle), Box::new(DenseDelta), Box::new(Gaussian)]
}

/// Least-squares slope of `ln t` against `ln size`.
pub fn loglog_slope(points: &[(usize, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| (p.0 as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.max(1e-12).ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

pub struct Series {
    pub method: &'static str,
    pub points: Vec<(usize, f64)>,
    pub slope: Option<f64>,
}

/// Best of `reps` wall times for every applicable method at every size.
pub fn measure(family: &dyn BenchFamily, sizes: &[usize], method_names: &[String], reps: usize) -> Result<Vec<Series>> {
    let all = methods();
    let chosen: Vec<&dyn BenchMethod> = if method_names.is_empty() {
        all.iter().map(|m| m.as_ref()).collect()
    } else {
        method_names
            .iter()
            .map(|n| {
                all.iter()
                    .find(|m| m.name() == n)
                    .map(|m| m.as_ref())
                    .ok_or_else(|| ConfigError(format!("unknown method '{n}'")))
            })
            .collect::<Result<_, _>>()?
    };
    let mut series: Vec<Series> = chosen
        .iter()
        .map(|m| Series {
            method: m.name(),
            points: Vec::new(),
            slope: None,
        })
        .collect();
    for &size in sizes {
        let inst = family.build(size)?;
        for (m, s) in chosen.iter().zip(&mut series) {
            if !m.applies(&inst) {
                continue;
            }
            let mut best = f64::INFINITY;
            for _ in 0..reps.max(1) {
                let t = Instant::now();
                m.run(&inst)?;
                best = best.min(t.elapsed().as_secs_f64());
            }
            info!("{} {} size {size}: {best:.6}s", family.name(), m.name());
            s.points.push((size, best));
        }
    }
    series.retain(|s| !s.points.is_empty());
    for s in &mut series {
        s.slope = loglog_slope(&s.points);
    }
    Ok(series)
}

pub fn run(cfg: &RunConfig, family: &str, sizes: &[usize], method_names: &[String], reps: usize) -> Result<()> {
    let fams = families();
    let fam = fams
        .iter()
        .find(|f| f.name() == family)
        .ok_or_else(|| ConfigError(format!("unknown family '{family}'")))?;
    let sizes = if sizes.is_empty() { fam.default_sizes() } else { sizes.to_vec() };
    let series = measure(fam.as_ref(), &sizes, method_names, reps)?;
    if is_json(cfg) {
        let methods: Vec<Value> = series
            .iter()
            .map(|s| {
                let points: Vec<Value> = s.points.iter().map(|&(n, t)| json!({"size": n, "seconds": t})).collect();
                json!({"method": s.method, "points": points, "slope": s.slope})
            })
            .collect();
        return emit_json(cfg, &json!({"family": fam.name(), "reps": reps, "methods": methods}));
    }
    let mut out = String::from("family,method,size,seconds,slope\n");
    for s in &series {
        let slope = s.slope.map(|x| format!("{x:.3}")).unwrap_or_default();
        for &(n, t) in &s.points {
            let _ = writeln!(out, "{},{},{n},{t:.9},{slope}", fam.name(), s.method);
        }
    }
    emit(cfg, &out)
}
