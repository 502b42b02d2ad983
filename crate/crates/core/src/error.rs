use std::fmt;

/// Errors raised by the numerical routines.
///
/// Validation failures (bad parameters, malformed input files) are kept
/// apart from numerical failures so that drivers can map them to distinct
/// exit statuses; see [`Error::is_validation`].
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("missing input: {0}")]
    MissingInput(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("resource budget exceeded: {0}")]
    Resource(String),
    #[error("series diverges: {0}")]
    Divergence(String),
    #[error("truncation error: {0}")]
    Truncation(String),
    #[error("numerical failure: {message} (residual {residual:e})")]
    Numeric { message: String, residual: f64 },
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("search error: {0}")]
    Search(String),
    #[error("consistency check failed: {0}")]
    Consistency(Mismatch),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

/// Two values that were expected to agree and did not.
#[derive(Debug, Clone, PartialEq)]
pub struct Mismatch {
    pub context: String,
    pub left: f64,
    pub right: f64,
    pub tolerance: f64,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {:.12e} vs {:.12e} (tolerance {:e})",
            self.context, self.left, self.right, self.tolerance
        )
    }
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn numeric(msg: impl Into<String>, residual: f64) -> Self {
        Error::Numeric {
            message: msg.into(),
            residual,
        }
    }

    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }

    /// True for errors caused by the caller's parameters or input files
    /// rather than by a numerical failure.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Domain(_)
                | Error::Input(_)
                | Error::MissingInput(_)
                | Error::Parse { .. }
                | Error::Json(_)
                | Error::Io(_)
        )
    }

    /// Short machine-readable tag for diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Input(_) => "input",
            Error::MissingInput(_) => "missing_input",
            Error::Parse { .. } => "parse",
            Error::Resource(_) => "resource",
            Error::Divergence(_) => "divergence",
            Error::Truncation(_) => "truncation",
            Error::Numeric { .. } => "numeric",
            Error::NoSolution(_) => "no_solution",
            Error::Search(_) => "search",
            Error::Consistency(_) => "consistency",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
