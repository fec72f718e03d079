use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{op}: dimension mismatch ({lhs_rows}x{lhs_cols} vs {rhs_rows}x{rhs_cols})")]
    DimensionMismatch {
        op: &'static str,
        lhs_rows: usize,
        lhs_cols: usize,
        rhs_rows: usize,
        rhs_cols: usize,
    },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("{what}: size {size} exceeds cap {cap}")]
    TooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("eigenvalue iteration did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("u outside convergence disk (|u| = {u_modulus}, spectral radius = {spectral_radius})")]
    OutsideConvergenceDisk {
        u_modulus: f64,
        spectral_radius: f64,
    },

    #[error("model is not a quantum walk family: {0}")]
    NotQuantumWalk(String),

    #[error("no closed eigenvalue list for {0}")]
    NoClosedEigenvalues(String),

    #[error("graph is not simple: {0}")]
    NotSimple(String),

    #[error("graph is not regular")]
    NotRegular,

    #[error("graph is not connected")]
    NotConnected,

    #[error("config: {0}")]
    Config(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Config(e.to_string())
    }
}
