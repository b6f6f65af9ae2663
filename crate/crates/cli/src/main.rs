//! `nblap`: weak reductions, persistent Laplacians, filtration spectra,
//! Cheeger reports and scaling benchmarks from the command line.
//!
//! Results go to standard output or `--out`; diagnostics go to standard
//! error at the level set by `NBLAP_LOG` (`off`, `info`, `debug`).

mod bench;
mod commands;
mod config;
mod exit;
mod load;
mod output;
mod spectra;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};

use crate::config::{CommonArgs, RunConfig};

#[derive(Debug, Parser)]
#[command(name = "nblap", version, about = "Persistent Laplacians of non-branching complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Weak column reduction of an nb-matrix file: R and the component sidecar.
    Reduce { input: PathBuf },
    /// Export B_LK, M, W_LK (and Δ with --materialize-delta) of a pair.
    Laplacian {
        /// Complex file for L.
        complex: PathBuf,
        /// Complex file listing the cells of K; K = L when absent.
        #[arg(long)]
        sub: Option<PathBuf>,
    },
    /// Eigenvalues of the up persistent Laplacian of a pair.
    Spectrum {
        complex: PathBuf,
        #[arg(long)]
        sub: Option<PathBuf>,
    },
    /// Spectra (or bundles) along the cell-wise filtration from K to L.
    Filtration {
        complex: PathBuf,
        #[arg(long)]
        sub: Option<PathBuf>,
        /// Emit per-step B_LK and W_LK instead of spectra.
        #[arg(long)]
        bundles: bool,
    },
    /// Filtration between the sublevel cubical complexes of a grayscale image.
    Image {
        /// PGM (P2/P5) or CSV of intensities.
        input: PathBuf,
        /// Number of 2×2 max-pooling passes before thresholding.
        #[arg(long, default_value_t = 0)]
        pool: usize,
        #[arg(long)]
        bundles: bool,
    },
    /// Cheeger-type bounds on the smallest nonzero eigenvalue.
    Cheeger {
        complex: PathBuf,
        #[arg(long)]
        sub: Option<PathBuf>,
        /// Also write the oriented hypergraph to this file.
        #[arg(long)]
        hypergraph: Option<PathBuf>,
    },
    /// Wall time against size for a synthetic family, with log-log slopes.
    Bench {
        /// star, grid or ngon.
        #[arg(long)]
        family: String,
        /// Comma-separated sizes; the family's ladder when absent.
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        /// Comma-separated subset of weak-reduce, bundle, dense-delta, gaussian.
        #[arg(long, value_delimiter = ',')]
        methods: Vec<String>,
        /// Repetitions per measurement; the fastest is kept.
        #[arg(long, default_value_t = 3)]
        reps: usize,
    },
}

fn run(cli: &Cli) -> Result<()> {
    let cfg = RunConfig::from_args(&cli.common)?;
    match &cli.command {
        Command::Reduce { input } => commands::reduce(&cfg, input),
        Command::Laplacian { complex, sub } => commands::laplacian(&cfg, complex, sub.as_deref()),
        Command::Spectrum { complex, sub } => commands::spectrum_cmd(&cfg, complex, sub.as_deref()),
        Command::Filtration { complex, sub, bundles } => {
            commands::filtration(&cfg, complex, sub.as_deref(), *bundles)
        }
        Command::Image { input, pool, bundles } => commands::image(&cfg, input, *pool, *bundles),
        Command::Cheeger { complex, sub, hypergraph } => {
            commands::cheeger(&cfg, complex, sub.as_deref(), hypergraph.as_deref())
        }
        Command::Bench {
            family,
            sizes,
            methods,
            reps,
        } => bench::run(&cfg, family, sizes, methods, *reps),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("NBLAP_LOG", "off"))
        .target(env_logger::Target::Stderr)
        .init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit::code_for(&e) as u8)
        }
    }
}
