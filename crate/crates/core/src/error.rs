use thiserror::Error;

/// Failures reported by the toolkit.
///
/// Every variant maps onto a distinct diagnostic code so front ends can
/// tell malformed requests apart from computations that ran out of budget.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The caller violated a precondition (mismatched rings, bad parameters).
    #[error("usage error: {0}")]
    Usage(String),
    /// The operation is undefined on the given value (e.g. leading term of 0).
    #[error("domain error: {0}")]
    Domain(String),
    /// Textual input could not be parsed.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    /// A Groebner computation produced an element above the configured degree cap.
    #[error("degree guard: basis element of degree {degree} exceeds cap {cap}")]
    DegreeGuard { degree: u32, cap: u32 },
    /// An explicit expansion exceeded the configured term-count cap.
    #[error("term cap: intermediate product has {terms} terms, cap is {cap}")]
    TermCap { terms: usize, cap: usize },
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    /// Stable short code used in reports and exit diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Usage(_) => "E_USAGE",
            Error::Domain(_) => "E_DOMAIN",
            Error::Parse { .. } => "E_PARSE",
            Error::DegreeGuard { .. } => "E_DEGREE_CAP",
            Error::TermCap { .. } => "E_TERM_CAP",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
