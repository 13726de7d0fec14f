use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported graph family: {0}")]
    UnsupportedFamily(String),

    #[error("unsupported graph: {0}")]
    UnsupportedGraph(String),

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("polytope is unbounded")]
    UnboundedPolytope,

    #[error("polytope is empty")]
    EmptyPolytope,

    #[error("starting point is not strictly interior")]
    InvalidStart,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("missing data: {0}")]
    MissingData(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
