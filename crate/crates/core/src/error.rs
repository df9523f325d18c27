use thiserror::Error;

/// Errors produced by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or inconsistent input (unknown vertex, bad permutation, ...).
    #[error("invalid input: {0}")]
    Input(String),

    /// Instance text that does not follow the file grammar.
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// A threshold exceeds the bound `t` required by the interval solver.
    #[error("threshold of vertex `{vertex}` is {tau}, exceeding the bound t = {bound}")]
    BoundViolation {
        vertex: String,
        tau: i64,
        bound: usize,
    },

    /// A structural precondition of an operation does not hold (e.g. non-cubic input).
    #[error("constraint violated: {0}")]
    Constraint(String),

    /// An exhaustive search would exceed its budget.
    #[error("search budget of {budget} candidates exhausted while trying size {size}")]
    Budget { budget: u64, size: usize },

    /// A test utility refused an instance above its enumeration guard.
    #[error("instance with {size} vertices exceeds the enumeration limit of {limit}")]
    TooLarge { size: usize, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
