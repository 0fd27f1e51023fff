use thiserror::Error;

/// Errors raised by the numerical routines and the problem runner.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("series did not converge after {terms} terms (last term {last_term:e}, partial sum {partial_sum:e})")]
    NonConvergence {
        terms: usize,
        last_term: f64,
        partial_sum: f64,
    },

    /// The alternating series lost more digits to cancellation than the
    /// configured budget allows.
    #[error("precision loss: estimated rounding error {error_estimate:e} exceeds budget for value {value:e}")]
    PrecisionLoss { value: f64, error_estimate: f64 },

    #[error("pole: {0}")]
    Pole(String),

    #[error("quadrature failure: {0}")]
    QuadratureFailure(String),

    #[error("inversion failure: {0}")]
    InversionFailure(String),

    #[error("rates tie: |c^nu - d^nu| = {gap:e} is below the tie tolerance")]
    Tie { gap: f64 },

    #[error("stability: {0}")]
    Stability(String),

    #[error("spec error: {0}")]
    Spec(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Short machine-readable tag used by the CLI error object.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "DomainError",
            Error::NonConvergence { .. } => "NonConvergence",
            Error::PrecisionLoss { .. } => "PrecisionLoss",
            Error::Pole(_) => "PoleError",
            Error::QuadratureFailure(_) => "QuadratureFailure",
            Error::InversionFailure(_) => "InversionFailure",
            Error::Tie { .. } => "TieError",
            Error::Stability(_) => "StabilityError",
            Error::Spec(_) => "SpecError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
