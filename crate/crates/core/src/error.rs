use thiserror::Error;

/// Errors produced by the interval-cover library.
#[derive(Debug, Error)]
pub enum CoverError {
    #[error("interval {id} has lo {lo} > hi {hi}")]
    InvalidInterval { id: usize, lo: i64, hi: i64 },

    #[error("unknown interval id {0}")]
    UnknownId(usize),

    #[error("duplicate interval id {0}")]
    DuplicateId(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("{sets} sets exceeds the enumeration cap of {cap}")]
    EnumerationCap { sets: usize, cap: usize },

    #[error("counterexample constraint violated: {0}")]
    Constraint(&'static str),

    /// An internal guarantee failed. This is a bug in the library, not bad input.
    #[error("internal invariant breached: {0}")]
    InvariantBreach(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = CoverError> = std::result::Result<T, E>;
