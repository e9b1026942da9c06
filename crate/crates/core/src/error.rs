use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("Gamma function has a pole at z = {0}")]
    Pole(f64),

    #[error("Gamma({0}) overflows the f64 range")]
    Overflow(f64),

    #[error("{what}: argument {value} is outside the domain")]
    Domain { what: &'static str, value: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Raw and centered moments of order `k` exist only for `k < alpha`;
    /// normalized moments additionally need a finite variance (`alpha > 2`).
    #[error("moment of order {order} is undefined for alpha = {alpha}")]
    UndefinedMoment { order: u32, alpha: f64 },

    /// The order is so close to alpha, and so high, that neither evaluation
    /// route keeps the rounding error below 1e-9.
    #[error("centered moment of order {order} at alpha = {alpha} cannot be evaluated to working precision")]
    PrecisionLoss { order: u32, alpha: f64 },

    #[error("no bracketing interval found: {0}")]
    NoBracket(String),

    #[error("root finder did not reach the requested tolerance after {0} iterations")]
    NoConvergence(usize),

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("insufficient data: need at least {needed} values, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}: cannot parse {token:?} as a number")]
    Parse { line: usize, token: String },

    #[error("{0}")]
    Format(String),

    #[error("no numeric values found in input")]
    EmptyInput,
}

impl Error {
    pub(crate) fn domain(what: &'static str, value: f64) -> Self {
        Error::Domain { what, value }
    }

    /// True for failures caused by reading or decoding external data, as
    /// opposed to mathematical domain or convergence failures.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Io { .. } | Error::Parse { .. } | Error::Format(_) | Error::EmptyInput
        )
    }
}
