use thiserror::Error;

/// Errors produced by lattice construction, file parsing and code analysis.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Lattice file could not be parsed; `line` is 1-based.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("operand length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Exhaustive search finished without finding a logical operator,
    /// so the distance is known only to exceed `cap`.
    #[error("no undetectable logical operator of weight <= {cap}; distance > {cap}")]
    WeightCapExceeded { cap: usize },

    #[error("decoder table too large: {0}")]
    DecoderTooLarge(String),

    /// A condition that must hold for every valid code was violated.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
