use std::time::Instant;

use anyhow::Result;
use log::{debug, info};
use nblap::complexes::ComplexPair;
use nblap::persistence::{FiltrationEngine, UpLaplacianBundle};
use nblap::spectral::{dense_oracle_eig, rank_cutoff, SolverRegistry, SpectrumResult, Which};
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::output::StepSpectrum;

/// Eigenvalues of the bundle's Laplacian from the configured solver, or
/// from a dense eigensolver on the assembled matrix under `--oracle`.
pub fn spectrum(bundle: &UpLaplacianBundle, cfg: &RunConfig) -> Result<SpectrumResult> {
    if cfg.oracle {
        return oracle_spectrum(bundle, cfg);
    }
    let reg = SolverRegistry::with_gkl_options(cfg.gkl);
    let name = match &cfg.solver {
        Some(s) => s.as_str(),
        None => SolverRegistry::default_for(cfg.which, bundle.m.n_rows(), bundle.m.n_cols()),
    };
    Ok(reg.spectrum(name, &bundle.m, cfg.k, cfg.which, cfg.seed)?)
}

fn oracle_spectrum(bundle: &UpLaplacianBundle, cfg: &RunConfig) -> Result<SpectrumResult> {
    let n = bundle.n_k();
    let ev = if n == 0 {
        Vec::new()
    } else {
        let delta = bundle.delta.clone().unwrap_or_else(|| bundle.assemble_delta());
        dense_oracle_eig(&delta)?
    };
    // the eigensolver's absolute error is about λ_max·n·ε, so the zero
    // threshold lives on the eigenvalue scale
    let ev_cut = rank_cutoff(ev.first().copied().unwrap_or(0.0), n, n);
    let cutoff = ev_cut.sqrt();
    let mut pairs: Vec<(f64, f64)> = ev
        .into_iter()
        .map(|x| if x <= ev_cut { (0.0, 0.0) } else { (x.sqrt(), x) })
        .collect();
    match cfg.which {
        Which::Top => {
            pairs.truncate(cfg.k);
        }
        Which::Bottom => {
            pairs.retain(|p| p.1 > 0.0);
            let start = pairs.len().saturating_sub(cfg.k);
            pairs.drain(..start);
        }
    }
    Ok(SpectrumResult {
        solver: "dense-oracle".into(),
        which: cfg.which,
        k: cfg.k,
        seed: cfg.seed,
        singular_values: pairs.iter().map(|p| p.0).collect(),
        eigenvalues: pairs.iter().map(|p| p.1).collect(),
        converged: vec![true; pairs.len()],
        residual_estimates: vec![0.0; pairs.len()],
        iterations: 0,
        cutoff,
    })
}

/// Bundle of one filtration step with the time spent building it.
pub struct TimedBundle {
    pub step: usize,
    pub seconds: f64,
    pub bundle: UpLaplacianBundle,
}

/// Bundles of every step of the filtration adding `steps` to `K`, in step
/// order.
pub fn filtration_bundles(pair: &ComplexPair, cfg: &RunConfig, steps: &[usize]) -> Result<Vec<TimedBundle>> {
    let t = Instant::now();
    let mut engine = FiltrationEngine::new(pair, cfg.q, steps)?;
    let setup = t.elapsed().as_secs_f64();
    debug!("filtration engine ready in {setup:.6}s");
    let mut out = Vec::with_capacity(steps.len() + 1);
    loop {
        let t = Instant::now();
        let bundle = engine.bundle(cfg.materialize_delta);
        out.push(TimedBundle {
            step: engine.position(),
            seconds: t.elapsed().as_secs_f64(),
            bundle,
        });
        if !engine.step_back() {
            break;
        }
    }
    out.reverse();
    // the engine setup is shared; charge it to the final pair
    if let Some(last) = out.last_mut() {
        last.seconds += setup;
    }
    info!("{} filtration steps", out.len());
    Ok(out)
}

/// Spectra of every bundle on a pool of `--jobs` threads, in step order.
pub fn filtration_spectra(bundles: &[TimedBundle], cfg: &RunConfig) -> Result<Vec<StepSpectrum>> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build()?;
    pool.install(|| {
        bundles
            .par_iter()
            .map(|b| {
                let t = Instant::now();
                let result = spectrum(&b.bundle, cfg)?;
                Ok(StepSpectrum {
                    step: b.step,
                    seconds: Some(b.seconds + t.elapsed().as_secs_f64()),
                    result,
                })
            })
            .collect()
    })
}
