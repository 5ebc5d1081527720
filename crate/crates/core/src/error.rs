use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A parameter lies outside its admissible range.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// A scalar formula was evaluated outside its domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Frame value lies beyond the classical turning point `p^2 / lambda`.
    #[error("phi = {phi} lies beyond the turning point {turning_point}")]
    BeyondTurningPoint { phi: f64, turning_point: f64 },

    /// The momentum grid cannot resolve the requested state.
    #[error("grid too coarse: {0}")]
    Resolution(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    /// The two expectation-value routes disagree.
    #[error("expectation routes disagree at tau = {tau}: analytic {analytic}, numeric {numeric}")]
    Inconsistent {
        tau: f64,
        analytic: f64,
        numeric: f64,
    },

    #[error("numerical consistency violated: {0}")]
    Numerical(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("observable matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    /// Too few samples lie in the asymptotic window `tau >= required_tau`.
    #[error("need at least {needed} samples with tau >= {required_tau}, found {found}")]
    InsufficientAsymptoticSamples {
        required_tau: f64,
        needed: usize,
        found: usize,
    },

    /// The fitted asymptotic slope deviates from one.
    #[error("series is not yet asymptotic: fitted slope {slope} (tau must reach {required_tau})")]
    NotAsymptotic { slope: f64, required_tau: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
