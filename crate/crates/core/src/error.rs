use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("{what} needs {needed} units of work, budget is {limit}")]
    Budget {
        what: &'static str,
        needed: u128,
        limit: u128,
    },
    #[error("direction violates the cone hypothesis: <c, h_{index}> = {value}")]
    Direction { index: usize, value: String },
    #[error("{0} overflowed 64 bits")]
    Overflow(&'static str),
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn budget(what: &'static str, needed: u128, limit: u128) -> Self {
        Error::Budget {
            what,
            needed,
            limit,
        }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}
