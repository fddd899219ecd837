//! `gft`: evaluate generalized Fourier transforms over grids, run the IVP and
//! difference-equation solvers and query the transform catalog.
//!
//! Tables go to standard output as CSV (`sigma,omega,re,im`, header always
//! present) or JSON; diagnostics go to standard error. Exit codes: 0 success,
//! 2 outside the region of convergence, 3 convergence failure, 64 usage error.

mod commands;
mod output;
mod values;

use std::io::{self, IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use gft_core::{Complex64, GftError};
use thiserror::Error;

use output::Format;

pub const EXIT_REGION: u8 = 2;
pub const EXIT_CONVERGENCE: u8 = 3;
pub const EXIT_USAGE: u8 = 64;
const EXIT_IO: u8 = 74;

#[derive(Parser, Debug)]
#[command(name = "gft", version, about = "Generalized Fourier transform toolkit")]
pub struct Cli {
    /// Output format for tables
    #[arg(long, global = true, value_enum, default_value = "csv")]
    pub format: Format,

    /// Quadrature tolerance (relative and absolute)
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the closed-form transform of a signal spec as JSON
    Catalog {
        #[arg(long)]
        spec: PathBuf,
        /// Treat the spec as a discrete sequence
        #[arg(long)]
        discrete: bool,
        /// |t|^p weight exponent
        #[arg(long, allow_negative_numbers = true)]
        p: Option<f64>,
    },
    /// Evaluate the transform on a (sigma, omega) grid
    Gft {
        #[arg(long)]
        spec: PathBuf,
        #[command(flatten)]
        grid: Grid,
        /// |t|^p weight exponent
        #[arg(long, allow_negative_numbers = true)]
        p: Option<f64>,
        /// Damping exponent in e^{-sigma |t|^q}
        #[arg(long, allow_negative_numbers = true)]
        q: Option<f64>,
        /// Use quadrature instead of the catalog
        #[arg(long)]
        numeric: bool,
    },
    /// Reconstruct x(t) from the catalog spectrum on the line Re s = sigma
    Igft {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        sigma: f64,
        #[arg(long, value_parser = reals, allow_hyphen_values = true)]
        t: Reals,
    },
    /// Fourier transform as the limit sigma -> 0
    FtLimit {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_parser = reals, allow_hyphen_values = true)]
        omega: Reals,
        /// Start of the sigma ladder sigma0 2^-k
        #[arg(long, default_value_t = 0.25)]
        sigma: f64,
        /// Ladder depth
        #[arg(long, default_value_t = 8)]
        ladder: usize,
        /// Symbolic limit from the catalog, printed as JSON
        #[arg(long)]
        symbolic: bool,
    },
    /// Transform of the periodic extension of one period
    Periodic {
        /// Signal on [0, T]
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        period: f64,
        #[command(flatten)]
        grid: Grid,
    },
    /// Discrete-time transform on a (sigma, Omega) grid
    Gdtft {
        #[arg(long)]
        spec: PathBuf,
        #[command(flatten)]
        grid: Grid,
        /// Direct partial sums instead of the closed form
        #[arg(long)]
        numeric: bool,
        #[arg(long, default_value_t = 8192)]
        n_max: u32,
    },
    /// Recover samples x[n] from the closed-form discrete spectrum
    Igdtft {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        sigma: f64,
        #[arg(long, value_parser = ints, allow_hyphen_values = true)]
        n: Ints,
        /// Initial trapezoid panel count
        #[arg(long, default_value_t = 32)]
        panels: usize,
    },
    /// Solve a linear ODE with constant coefficients; prints the solution spec
    Ivp {
        /// Equation order (checked against the coefficient count)
        #[arg(long)]
        order: Option<usize>,
        /// a_M, ..., a_0, highest order first
        #[arg(long, value_parser = complexes, allow_hyphen_values = true)]
        coeffs: Complexes,
        /// x(0), x'(0), ...
        #[arg(long, value_parser = complexes, allow_hyphen_values = true)]
        ic: Complexes,
        /// Forcing signal spec
        #[arg(long)]
        forcing: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "gft")]
        route: Route,
    },
    /// Solve sum_k b_k x[n-k] = f[n] for n >= 0
    Diffeq {
        /// b_0, ..., b_K
        #[arg(long, value_parser = complexes, allow_hyphen_values = true)]
        coeffs: Complexes,
        /// x[-1], ..., x[-K]
        #[arg(long, value_parser = complexes, allow_hyphen_values = true)]
        ic: Option<Complexes>,
        /// Forcing sequence spec
        #[arg(long)]
        forcing: Option<PathBuf>,
        /// Also list x[0..N]
        #[arg(long)]
        samples: Option<u32>,
    },
    /// Fourier scale transform, or its inverse with --tau
    #[command(group(ArgGroup::new("axis").required(true).args(["omega", "tau"])))]
    Fst {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_parser = reals, allow_hyphen_values = true)]
        sigma: Reals,
        #[arg(long, value_parser = reals, allow_hyphen_values = true)]
        omega: Option<Reals>,
        #[arg(long, value_parser = reals, allow_hyphen_values = true)]
        tau: Option<Reals>,
    },
    /// Gamma-family functions; prints re,im per argument
    Gamma {
        #[arg(long, value_parser = complexes, allow_hyphen_values = true)]
        s: Complexes,
        #[arg(long, value_enum, default_value = "generalized")]
        kind: GammaChoice,
        /// Split point of the incomplete functions
        #[arg(long, allow_negative_numbers = true)]
        x: Option<f64>,
    },
    /// Damped Cauchy moments (--m) or a moment generating function (--pdf)
    #[command(group(ArgGroup::new("what").required(true).args(["m", "pdf"])))]
    Moments {
        #[arg(long, value_parser = ints)]
        m: Option<Ints>,
        #[arg(long, value_enum)]
        pdf: Option<Pdf>,
        #[arg(long, value_parser = reals, allow_hyphen_values = true)]
        sigma: Reals,
        #[arg(long, value_parser = reals, allow_hyphen_values = true, requires = "pdf")]
        omega: Option<Reals>,
    },
    /// Damped continuous wavelet transform with the Mexican hat
    Cwt {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        sigma: f64,
        #[arg(long, value_parser = reals, allow_hyphen_values = true)]
        a: Reals,
        #[arg(long, value_parser = reals, allow_hyphen_values = true)]
        b: Reals,
    },
    /// Damped cosine transform
    Fct {
        #[arg(long)]
        spec: PathBuf,
        #[command(flatten)]
        grid: Grid,
    },
    /// Two-dimensional transform of x1(t1) x2(t2)
    Md2 {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        spec2: PathBuf,
        #[arg(long, value_parser = reals, allow_hyphen_values = true)]
        sigma: Reals,
        #[arg(long, value_parser = reals, allow_hyphen_values = true)]
        omega: Reals,
        #[arg(long, value_parser = reals, allow_hyphen_values = true)]
        omega2: Reals,
    },
}

#[derive(Args, Debug)]
pub struct Grid {
    #[arg(long, value_parser = reals, allow_hyphen_values = true)]
    pub sigma: Reals,
    #[arg(long, value_parser = reals, allow_hyphen_values = true)]
    pub omega: Reals,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Route {
    Gft,
    Ft,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum GammaChoice {
    Gamma,
    Generalized,
    Complementary,
    Lower,
    Upper,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Pdf {
    Laplace,
    Gauss,
    Cauchy,
}

#[derive(Clone, Debug)]
pub struct Reals(pub Vec<f64>);

#[derive(Clone, Debug)]
pub struct Ints(pub Vec<i64>);

#[derive(Clone, Debug)]
pub struct Complexes(pub Vec<Complex64>);

fn reals(s: &str) -> Result<Reals, String> {
    values::real_list(s).map(Reals)
}

fn ints(s: &str) -> Result<Ints, String> {
    values::int_list(s).map(Ints)
}

fn complexes(s: &str) -> Result<Complexes, String> {
    values::complex_list(s).map(Complexes)
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] GftError),
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Input { path: PathBuf, source: io::Error },
    #[error("write failed: {0}")]
    Output(#[from] io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e {
                GftError::Region(_) | GftError::Pole(_) | GftError::Divergent(_) => EXIT_REGION,
                GftError::Convergence { .. } | GftError::Distributional(_) | GftError::Consistency(_) => {
                    EXIT_CONVERGENCE
                }
                _ => EXIT_USAGE,
            },
            CliError::Usage(_) | CliError::Input { .. } => EXIT_USAGE,
            CliError::Output(_) => EXIT_IO,
        }
    }
}

fn color_enabled() -> bool {
    std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty()) && io::stderr().is_terminal()
}

fn report(message: &str) {
    let label = if color_enabled() {
        "\x1b[1;31merror\x1b[0m"
    } else {
        "error"
    };
    let _ = writeln!(io::stderr(), "{label}: {message}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let stdout = io::stdout().lock();
    match commands::run(&cli, stdout) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Output(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            report(&e.to_string());
            ExitCode::from(e.exit_code())
        }
    }
}
