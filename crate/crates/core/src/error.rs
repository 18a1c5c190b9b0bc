use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed arguments: out-of-range vertices, overlapping sets, unbalanced splits.
    #[error("invalid input: {0}")]
    Input(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// The input is well formed but the operation is undefined on it
    /// (disconnected graph, odd order, empty constraint space).
    #[error("{0}")]
    Domain(String),

    /// An exhaustive solver was asked to run beyond its size guard.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("eigensolver failure: {msg} (achieved residual {residual:.3e})")]
    Numeric { msg: String, residual: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) | Error::Parse { .. } | Error::Io(_) => 2,
            Error::Domain(_) => 3,
            Error::Resource(_) => 4,
            Error::Numeric { .. } => 5,
        }
    }
}
