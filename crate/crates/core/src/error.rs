use thiserror::Error;

/// Errors raised by model evaluation, kernels and quadrature.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("frequency {omega} outside tabulated range [{min}, {max}]")]
    OutOfRange { omega: f64, min: f64, max: f64 },

    #[error("{quantity} is singular at zero frequency")]
    SingularFrequency { quantity: &'static str },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(
        "quadrature on [{a}, {b}] did not reach tolerance after {subdivisions} subdivisions \
         (estimate {estimate}, error {error:e})"
    )]
    NonConvergence {
        a: f64,
        b: f64,
        estimate: num_complex::Complex64,
        error: f64,
        subdivisions: usize,
    },

    #[error("refused: {0}")]
    Refused(String),

    #[error("mirror table: {0}")]
    Table(String),

    #[error("at ω = {omega}: {source}")]
    AtFrequency { omega: f64, source: Box<Error> },
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub fn at_frequency(self, omega: f64) -> Self {
        match self {
            e @ Error::AtFrequency { .. } => e,
            e => Error::AtFrequency { omega, source: Box::new(e) },
        }
    }

    /// True for quadrature failures and refused (non-convergent) configurations.
    pub fn is_non_convergence(&self) -> bool {
        match self {
            Error::NonConvergence { .. } | Error::Refused(_) => true,
            Error::AtFrequency { source, .. } => source.is_non_convergence(),
            _ => false,
        }
    }

    /// Frequency at which a sweep failed, when known.
    pub fn frequency(&self) -> Option<f64> {
        match self {
            Error::AtFrequency { omega, .. } => Some(*omega),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
