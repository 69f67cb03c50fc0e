use thiserror::Error;

/// Errors raised by the threshold library.
///
/// `Domain` covers violated preconditions on user-supplied parameters; every
/// other variant is a numerical failure.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0}")]
    Domain(String),

    #[error("path passes through the turning point at parameter {at}")]
    Singularity { at: f64 },

    #[error("branch tracking lost continuity at parameter {at} (step below {min_step:e})")]
    Continuity { at: f64, min_step: f64 },

    #[error("quadrature did not converge: error estimate {estimate:e} after {intervals} intervals")]
    Quadrature { estimate: f64, intervals: usize },

    #[error("no sign change of rho on [{lo}, {hi}] for alpha = {alpha}")]
    Bracket { alpha: f64, lo: f64, hi: f64 },

    #[error("grid too coarse: {0}")]
    Resolution(String),

    #[error("ODE integration failed: {0}")]
    Integration(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn is_domain(&self) -> bool {
        matches!(self, Error::Domain(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
