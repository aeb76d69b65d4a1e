use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// The variants map onto the CLI exit codes: `Validation`, `Hypothesis`,
/// `Domain` and `Usage` are input problems, `Consistency` means a theorem
/// check failed (always a bug), `Capability` means a size guard tripped.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("capability limit: {0}")]
    Capability(String),
}

impl Error {
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Domain(_) | Error::Usage(_) | Error::Hypothesis(_) | Error::Validation(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Largest group order the exhaustive algorithms accept.
pub const MAX_GROUP_ORDER: usize = 100_000;
/// Largest `q^dim J` accepted for orbit enumeration.
pub const MAX_SPACE_SIZE: usize = 1_000_000;
/// Largest number of primitive idempotents (the lattice has `2^n` members).
pub const MAX_PRIMITIVES: usize = 16;
