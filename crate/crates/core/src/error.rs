use thiserror::Error;

/// Errors produced anywhere in the laboratory.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("frequency index {index} lies outside the grid cutoff (|index| <= {max_index})")]
    OutOfGrid { index: i64, max_index: i64 },

    #[error("non-finite coefficient at frequency index {0}")]
    NonFinite(i64),

    #[error(
        "support overflow: result reaches index {needed} but grid admits |index| <= {max_index}"
    )]
    SupportOverflow { needed: i64, max_index: i64 },

    #[error("undersampling: {got} samples given, at least {required} required")]
    Undersampled { got: usize, required: usize },

    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("quadrature did not converge: change {change:.3e} above tolerance {tol:.3e} after {panels} panels")]
    QuadratureNonConvergence { change: f64, tol: f64, panels: usize },

    #[error("outside convergence regime: c*T*M = {rho:.4} >= 1")]
    ConvergenceRegime { rho: f64 },

    #[error("fixed-point iteration is not contracting: measured ratio {ratio:.4}")]
    NonContraction { ratio: f64 },

    #[error("blow-up detected at t = {t:.6}: coefficient magnitude {magnitude:.3e}")]
    BlowUp { t: f64, magnitude: f64 },

    #[error("infeasible schedule: {0}")]
    InfeasibleSchedule(String),

    #[error("identity violated: {0}")]
    IdentityViolation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
