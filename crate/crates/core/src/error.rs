use thiserror::Error;

/// Every failure surfaced by the library.
///
/// The variants map one-to-one onto the CLI's error classes, so callers can
/// turn an `Error` into an exit status with [`Error::exit_code`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Bad arguments: wrong dimension, out-of-range vertex, k < 2, ...
    #[error("{0}")]
    Usage(String),
    /// Parameters outside the model: r >= 1/4, argument outside a branch domain, ...
    #[error("{0}")]
    Domain(String),
    /// A sampled instance cannot host the request (e.g. k > N).
    #[error("{0}")]
    Instance(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Io(String),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
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

    /// Short, stable tag for log lines and the CLI's `error[<code>]` prefix.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Usage(_) => "usage",
            Error::Domain(_) => "domain",
            Error::Instance(_) => "instance",
            Error::Parse { .. } => "parse",
            Error::Io(_) => "io",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) => 2,
            _ => 1,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
