use thiserror::Error;

/// Errors raised by the solvers, oracles and instance I/O.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{what} refused: size {size} exceeds the limit {limit}")]
    SizeRefused {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("division by zero in GF(2^{kappa})")]
    DivisionByZero { kappa: u32 },

    #[error("graph is not bipartite: odd cycle {cycle:?}")]
    NotBipartite { cycle: Vec<usize> },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
