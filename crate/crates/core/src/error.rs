use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("family is not essential: supports {subset:?} span dimension {dim} < {needed}")]
    NotEssential {
        subset: Vec<usize>,
        dim: usize,
        needed: usize,
    },

    #[error("invalid projection: {0}")]
    Projection(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("specialized columns of M are linearly dependent; only the projection can be reported")]
    SingularM1,

    #[error("halfspace does not meet the polytope")]
    EmptyIntersection,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
