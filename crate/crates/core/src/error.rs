use thiserror::Error;

/// Errors surfaced by construction, validation, and the CLI front end.
#[derive(Debug, Error)]
pub enum FieqError {
    #[error("grid resolution must be at least 2, got {0}")]
    InvalidGrid(usize),

    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),

    #[error("value {0} outside the unit interval [0,1]")]
    Domain(f64),

    #[error("unknown {kind} identifier `{name}`")]
    UnknownName { kind: &'static str, name: String },

    #[error("{what} failed its axiom check: {detail}")]
    Construction { what: String, detail: String },

    #[error("generator `{0}` is unbounded at 1")]
    UnboundedGenerator(String),

    #[error("chain resolution {0} exceeds the exhaustive budget (max {1})")]
    Budget(usize, usize),

    #[error("chain resolutions differ: {0} vs {1}")]
    MismatchedResolution(usize, usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, FieqError>;
