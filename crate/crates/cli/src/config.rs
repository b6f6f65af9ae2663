//! Validated run configuration shared by every command.

use std::fmt;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use nblap::spectral::{GklOptions, Which};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WhichArg {
    Top,
    Bottom,
}

impl From<WhichArg> for Which {
    fn from(w: WhichArg) -> Self {
        match w {
            WhichArg::Top => Which::Top,
            WhichArg::Bottom => Which::Bottom,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Order {
    /// Cell key order.
    Lex,
    /// Cell value (pixel intensity or cell weight), ties by key.
    Value,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Flags accepted by every command; each command reads the ones it needs.
#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Cell dimension of the Laplacian.
    #[arg(long, global = true, default_value_t = 1)]
    pub q: usize,
    /// Threshold for K: pixels with intensity below it.
    #[arg(long, global = true)]
    pub tk: Option<u32>,
    /// Threshold for L: pixels with intensity below it.
    #[arg(long, global = true)]
    pub tl: Option<u32>,
    /// Number of eigenvalues per step.
    #[arg(long, global = true, default_value_t = 6)]
    pub k: usize,
    #[arg(long, global = true, value_enum, default_value_t = WhichArg::Top)]
    pub which: WhichArg,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Order in which the cells of L \ K enter a filtration.
    #[arg(long, global = true, value_enum, default_value_t = Order::Lex)]
    pub order: Order,
    /// Also build the dense Laplacian.
    #[arg(long, global = true)]
    pub materialize_delta: bool,
    /// Eigenvalues from a dense eigensolver on the assembled Laplacian.
    #[arg(long, global = true)]
    pub oracle: bool,
    /// Singular value solver (gkl, full-bidiag, gram, dense); chosen per
    /// request when absent.
    #[arg(long, global = true)]
    pub solver: Option<String>,
    /// Plain Lanczos recurrence without reorthogonalization.
    #[arg(long, global = true)]
    pub no_reorth: bool,
    /// Worker threads for per-step spectra.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Output file, or directory for commands writing several files.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub q: usize,
    pub thresholds: Option<(u32, u32)>,
    pub k: usize,
    pub which: Which,
    pub seed: u64,
    pub order: Order,
    pub materialize_delta: bool,
    pub oracle: bool,
    pub solver: Option<String>,
    pub gkl: GklOptions,
    pub jobs: usize,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn from_args(a: &CommonArgs) -> Result<Self, ConfigError> {
        if a.k == 0 {
            return Err(ConfigError("--k must be at least 1".into()));
        }
        if a.jobs == 0 {
            return Err(ConfigError("--jobs must be at least 1".into()));
        }
        let thresholds = match (a.tk, a.tl) {
            (Some(tk), Some(tl)) if tk > tl => {
                return Err(ConfigError(format!("--tk {tk} exceeds --tl {tl}")));
            }
            (Some(tk), Some(tl)) => Some((tk, tl)),
            (None, None) => None,
            _ => return Err(ConfigError("--tk and --tl go together".into())),
        };
        Ok(Self {
            q: a.q,
            thresholds,
            k: a.k,
            which: a.which.into(),
            seed: a.seed,
            order: a.order,
            materialize_delta: a.materialize_delta,
            oracle: a.oracle,
            solver: a.solver.clone(),
            gkl: GklOptions {
                reorthogonalize: !a.no_reorth,
            },
            jobs: a.jobs,
            out: a.out.clone(),
            format: a.format,
        })
    }
}
