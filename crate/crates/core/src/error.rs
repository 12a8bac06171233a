use thiserror::Error;

/// Errors raised by the counting engines and the polynomial toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid board shape {rows}x{cols}: both dimensions must be at least 1")]
    InvalidShape { rows: usize, cols: usize },

    #[error("piece count {k} out of range 1..={max}")]
    PieceCountOutOfRange { k: usize, max: usize },

    #[error("({a}, {b}) is not an edge of the {rows}x{cols} board")]
    NotAnEdge {
        a: usize,
        b: usize,
        rows: usize,
        cols: usize,
    },

    #[error("board has {edges} edges, exceeding the brute-force limit of {limit}")]
    EdgeLimitExceeded { edges: usize, limit: usize },

    #[error("board has {rows} rows; the profile counter supports at most {limit}")]
    TooManyRows { rows: usize, limit: usize },

    #[error("duplicate interpolation abscissa {0}")]
    DuplicateAbscissa(i64),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("table conflict at n={n}, k={k}: {existing} vs {incoming}")]
    TableConflict {
        n: usize,
        k: usize,
        existing: String,
        incoming: String,
    },

    #[error("{context}: {left} disagrees with {right}")]
    Disagreement {
        context: String,
        left: String,
        right: String,
    },

    #[error("fit for k={k} failed at n={n}: {reason}")]
    Fit { k: usize, n: usize, reason: String },

    #[error("Burnside sum {sum} is not divisible by the group order {order}")]
    NonIntegralOrbitCount { sum: String, order: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
