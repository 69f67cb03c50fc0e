use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod config;
mod format;
mod output;
mod verify;

use config::FileConfig;

/// Completeness threshold of -d^2/dx^2 + c x^alpha on the half-line.
#[derive(Debug, Parser)]
#[command(name = "spectral-threshold", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Root-finding tolerance in theta.
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Relative tolerance of the action quadratures.
    #[arg(long, global = true)]
    rel_tol: Option<f64>,

    /// Write the machine-readable output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Read --theta and --phi in degrees.
    #[arg(long, global = true)]
    degrees: bool,

    /// `key = value` defaults (tol, rel_tol, k, n, steps, format, degrees).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// rho(theta) with its integral terms and the turning points.
    Rho {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
        /// Also evaluate rho(theta, phi) at this phi <= t0.
        #[arg(long, allow_hyphen_values = true)]
        phi: Option<f64>,
    },
    /// Threshold theta0(alpha).
    Theta0 {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
    },
    /// t0 and theta0 over a uniform alpha grid.
    Curve {
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.1)]
        alpha_min: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 1.9)]
        alpha_max: f64,
        /// Number of grid intervals; the grid has steps + 1 points. [default: 180]
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Eigenvalues tau_n of -y'' + x^alpha y, optionally rotated onto the ray for theta.
    Spectrum {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        /// Number of eigenvalues. [default: 5]
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<f64>,
    },
    /// Compare the Weyl solution with its two-term asymptotics.
    WkbCheck {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long, allow_hyphen_values = true)]
        phi: Option<f64>,
        /// Large parameter. [default: 20]
        #[arg(long, allow_hyphen_values = true)]
        k: Option<f64>,
    },
    /// Run the invariant suite.
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Numerical(String),
    #[error("verification failed: {0}")]
    Verify(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Verify(_) => 4,
        }
    }
}

impl From<threshold_core::Error> for CliError {
    fn from(e: threshold_core::Error) -> Self {
        if e.is_domain() {
            CliError::Input(e.to_string())
        } else {
            CliError::Numerical(e.to_string())
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

/// Fully resolved invocation: flags over config file over built-in defaults.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub tol: f64,
    pub rel_tol: f64,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub k: f64,
    pub n: usize,
    pub steps: usize,
    degrees: bool,
}

impl RunConfig {
    fn resolve(cli: &Cli) -> Result<Self, CliError> {
        let file = match &cli.config {
            Some(path) => FileConfig::load(path)?,
            None => FileConfig::default(),
        };
        let format = cli.format.or(match file.format.as_deref() {
            Some("csv") => Some(Format::Csv),
            Some("json") => Some(Format::Json),
            _ => None,
        });
        let cfg = RunConfig {
            tol: cli.tol.or(file.tol).unwrap_or(threshold_core::threshold::DEFAULT_TOL),
            rel_tol: cli.rel_tol.or(file.rel_tol).unwrap_or(threshold_core::pathquad::ACTION_REL_TOL),
            out: cli.out.clone(),
            format,
            k: file.k.unwrap_or(20.0),
            n: file.n.unwrap_or(5),
            steps: file.steps.unwrap_or(180),
            degrees: cli.degrees || file.degrees.unwrap_or(false),
        };
        if !(cfg.tol > 0.0 && cfg.tol.is_finite()) {
            return Err(CliError::Input(format!("tol must be > 0, got {}", cfg.tol)));
        }
        if !(cfg.rel_tol > 0.0 && cfg.rel_tol < 1.0) {
            return Err(CliError::Input(format!("rel-tol must be in (0, 1), got {}", cfg.rel_tol)));
        }
        Ok(cfg)
    }

    pub fn angle(&self, x: f64) -> f64 {
        if self.degrees {
            x.to_radians()
        } else {
            x
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut cfg = RunConfig::resolve(&cli)?;
    match cli.command {
        Command::Rho { alpha, theta, phi } => commands::rho(&cfg, alpha, theta, phi),
        Command::Theta0 { alpha } => commands::theta0(&cfg, alpha),
        Command::Curve { alpha_min, alpha_max, steps } => {
            if let Some(s) = steps {
                cfg.steps = s;
            }
            commands::curve(&cfg, alpha_min, alpha_max)
        }
        Command::Spectrum { alpha, n, theta } => {
            if let Some(n) = n {
                cfg.n = n;
            }
            commands::spectrum(&cfg, alpha, theta)
        }
        Command::WkbCheck { alpha, theta, phi, k } => {
            if let Some(k) = k {
                cfg.k = k;
            }
            commands::wkb_check(&cfg, alpha, theta, phi)
        }
        Command::Verify => verify::run(&cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
