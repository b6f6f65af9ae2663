use std::fmt::Write as _;
use std::io::Write as _;

use anyhow::{Context, Result};
use nblap::format::fmt_f64;
use nblap::spectral::SpectrumResult;
use serde_json::{json, Value};

use crate::config::{Format, RunConfig};

/// Writes `text` to `--out`, or standard output.
pub fn emit(cfg: &RunConfig, text: &str) -> Result<()> {
    match &cfg.out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

/// Writes each `(name, text)` into the `--out` directory, or all of them to
/// standard output under `# name` lines.
pub fn emit_files(cfg: &RunConfig, files: &[(String, String)]) -> Result<()> {
    match &cfg.out {
        Some(dir) => {
            std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            for (name, text) in files {
                let p = dir.join(name);
                std::fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?;
            }
            Ok(())
        }
        None => {
            let mut all = String::new();
            for (name, text) in files {
                let _ = writeln!(all, "# {name}");
                all.push_str(text);
            }
            emit(cfg, &all)
        }
    }
}

pub fn emit_json(cfg: &RunConfig, v: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(v)?;
    text.push('\n');
    emit(cfg, &text)
}

pub fn is_json(cfg: &RunConfig) -> bool {
    cfg.format == Format::Json
}

/// Spectrum of one step, with its wall time when the command is timed.
pub struct StepSpectrum {
    pub step: usize,
    pub seconds: Option<f64>,
    pub result: SpectrumResult,
}

pub fn spectra_csv(steps: &[StepSpectrum]) -> String {
    let timed = steps.iter().any(|s| s.seconds.is_some());
    let mut out = String::from("step,index,singular_value,eigenvalue,converged");
    out.push_str(if timed { ",seconds\n" } else { "\n" });
    for s in steps {
        let r = &s.result;
        for i in 0..r.singular_values.len() {
            let _ = write!(
                out,
                "{},{},{},{},{}",
                s.step,
                i,
                fmt_f64(r.singular_values[i]),
                fmt_f64(r.eigenvalues[i]),
                r.converged[i]
            );
            if let Some(t) = s.seconds {
                let _ = write!(out, ",{t:.6}");
            }
            out.push('\n');
        }
    }
    out
}

pub fn spectra_json(cfg: &RunConfig, steps: &[StepSpectrum]) -> Value {
    let steps: Vec<Value> = steps
        .iter()
        .map(|s| {
            let r = &s.result;
            let values: Vec<Value> = (0..r.singular_values.len())
                .map(|i| {
                    json!({
                        "index": i,
                        "singular_value": r.singular_values[i],
                        "eigenvalue": r.eigenvalues[i],
                        "converged": r.converged[i],
                    })
                })
                .collect();
            let mut v = json!({
                "step": s.step,
                "solver": r.solver,
                "iterations": r.iterations,
                "cutoff": r.cutoff,
                "values": values,
            });
            if let Some(t) = s.seconds {
                v["seconds"] = json!(t);
            }
            v
        })
        .collect();
    json!({
        "q": cfg.q,
        "k": cfg.k,
        "which": cfg.which,
        "seed": cfg.seed,
        "steps": steps,
    })
}

pub fn emit_spectra(cfg: &RunConfig, steps: &[StepSpectrum]) -> Result<()> {
    if is_json(cfg) {
        emit_json(cfg, &spectra_json(cfg, steps))
    } else {
        emit(cfg, &spectra_csv(steps))
    }
}
