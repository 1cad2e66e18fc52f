//! Driver for the verification suites and data scans.
//!
//! Machine-readable output (CSV or JSON) goes to stdout or `--output`; human summaries go to
//! stderr. Exit codes: 0 success, 1 a verification check failed, 2 configuration or
//! precondition error.

pub mod commands;
pub mod parse;
pub mod verify;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "fpeps", version, about = "Fermionic PEPS verification suites and Gaussian scans")]
pub struct Cli {
    /// Write the machine-readable output here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Fock-space fPEPS against contracted mapped PEPS.
    Mapping,
    /// Example channel: closed forms, lattice/Fourier equivalence, ground-state consistency.
    Gaussian,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a verification suite and print a JSON report.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Lattice `NHxNV`. Mapping default: 1x2, 2x1 and 2x2 in rotation. Gaussian default: 3x3.
        #[arg(long, value_parser = parse::lattice)]
        lattice: Option<fock_oracle::LatticeSpec>,
        /// Number of random tensor sets for the mapping suite.
        #[arg(long, default_value_t = verify::MAPPING_DEFAULT_COUNT)]
        count: usize,
        /// Override every tolerance of the suite. Defaults: overlap 1e-10; channel validity
        /// 1e-12; closed forms, purity, equivalence, consistency and energy 1e-10.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Correlator table `n1,n2,kind,numeric,residue,asymptotic` along the given directions.
    Correlations {
        /// Comma-separated subset of `axis`, `diagonal`, `n-2n`.
        #[arg(long, required = true, value_delimiter = ',', value_parser = parse::direction)]
        dir: Vec<critical_model::Direction>,
        #[arg(long, default_value_t = 40)]
        max_n: i64,
        /// Odd quadrature grid size, at least 101.
        #[arg(long, default_value_t = 401)]
        grid: usize,
    },
    /// Parent-Hamiltonian coefficient table in Dirac form.
    Hamiltonian {
        /// Built-in model.
        #[arg(long, default_value = "example", conflicts_with = "channel")]
        model: String,
        /// Channel JSON `{p_modes, q_modes, A, B, D}` instead of the built-in model.
        #[arg(long)]
        channel: Option<PathBuf>,
        /// Odd lattice for the literal critical table.
        #[arg(long, value_parser = parse::lattice, default_value = "5x5")]
        lattice: fock_oracle::LatticeSpec,
    },
    /// Gap per `N x N` torus (`--sizes`) or the full spectrum of one lattice (`--lattice`).
    Spectrum {
        /// Comma list and ranges, e.g. `5,7,9` or `5..41:2`.
        #[arg(long, value_parser = parse::usize_list, conflicts_with = "lattice", required_unless_present = "lattice")]
        sizes: Option<parse::UsizeList>,
        #[arg(long, value_parser = parse::lattice)]
        lattice: Option<fock_oracle::LatticeSpec>,
    },
    /// Entropy of `L x L` blocks on a torus.
    Entropy {
        #[arg(long)]
        torus: usize,
        /// Block sizes, e.g. `3..8` (inclusive) or `3,5,7`.
        #[arg(long, value_parser = parse::usize_list)]
        blocks: parse::UsizeList,
    },
    /// Map an fPEPS tensor-set JSON to PEPS JSON.
    Convert {
        #[arg(long)]
        input: PathBuf,
    },
}

/// Configuration or precondition error; exit code 2.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

macro_rules! config_from {
    ($($t:ty),*) => {$(
        impl From<$t> for ConfigError {
            fn from(e: $t) -> Self {
                ConfigError(e.to_string())
            }
        }
    )*};
}

config_from!(
    critical_model::ModelError,
    gaussian_core::GaussError,
    fock_oracle::FockError,
    std::io::Error,
    csv::Error
);

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub output: String,
    pub summary: String,
    pub exit: i32,
}

impl Outcome {
    fn ok(output: String, summary: String) -> Self {
        Self { output, summary, exit: EXIT_OK }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, ConfigError> {
    match &cli.command {
        Command::Verify { suite, seed, lattice, count, tol } => {
            let report = match suite {
                Suite::Mapping => verify::mapping(*seed, lattice.as_ref(), *count, *tol)?,
                Suite::Gaussian => verify::gaussian(*seed, lattice.as_ref(), *tol)?,
            };
            Ok(report.into_outcome())
        }
        Command::Correlations { dir, max_n, grid } => commands::correlations(dir, *max_n, *grid),
        Command::Hamiltonian { model, channel, lattice } => commands::hamiltonian(model, channel.as_deref(), lattice),
        Command::Spectrum { sizes, lattice } => commands::spectrum(sizes.as_ref().map(|s| s.0.as_slice()), lattice.as_ref()),
        Command::Entropy { torus, blocks } => commands::entropy(*torus, &blocks.0),
        Command::Convert { input } => commands::convert(input),
    }
}

/// Applies `FPEPS_THREADS` to the global rayon pool.
pub fn configure_threads(var: Option<&str>) -> Result<(), ConfigError> {
    let Some(v) = var else { return Ok(()) };
    let n: usize = v.trim().parse().map_err(|_| ConfigError(format!("FPEPS_THREADS must be a positive integer, got {v:?}")))?;
    if n == 0 {
        return Err(ConfigError("FPEPS_THREADS must be positive".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| ConfigError(format!("thread pool: {e}")))
}
