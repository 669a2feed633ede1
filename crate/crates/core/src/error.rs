use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Inputs of incompatible shape: wrong alphabet, wrong arity, mixed periods...
    #[error("shape error: {0}")]
    Shape(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// A finite window does not cover the indices an evaluation depends on.
    #[error("needed input indices [{need_lo}, {need_hi}] but window covers [{have_lo}, {have_hi}]")]
    NeededRange {
        need_lo: i64,
        need_hi: i64,
        have_lo: i64,
        have_hi: i64,
    },

    #[error("resource cap exceeded: {what} would exceed {cap}")]
    Resource { what: String, cap: u64 },

    #[error("action is not free: {witness}")]
    NotFree { witness: String },

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("rejected: {0}")]
    Rejected(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable reason code.
    pub fn reason(&self) -> &'static str {
        match self {
            Error::Shape(_) => "shape",
            Error::Parse(_) => "parse",
            Error::NeededRange { .. } => "needed_range",
            Error::Resource { .. } => "resource",
            Error::NotFree { .. } => "not_free",
            Error::InvalidAction(_) => "invalid_action",
            Error::Overflow(_) => "overflow",
            Error::Rejected(_) => "rejected",
            Error::Io(_) => "io",
        }
    }

    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
