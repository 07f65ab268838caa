use thiserror::Error;

/// Errors raised by the library.
///
/// The variants are grouped so the CLI can map them onto its exit-code
/// contract: [`Error::is_capacity`] selects the budget failures, everything
/// else is a usage or input problem.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alternative index {0} is out of range")]
    UnknownAlternative(usize),

    #[error("unknown alternative label `{0}`")]
    UnknownLabel(String),

    #[error("duplicate alternative label `{0}`")]
    DuplicateLabel(String),

    #[error("the relation contains a cycle through alternative {0}")]
    Cycle(usize),

    #[error("{0}")]
    Usage(String),

    #[error("the profile is not complete; use the uncertainty module for partial preferences")]
    IncompleteProfile,

    #[error("the agenda is not a linear order over all alternatives")]
    IncompleteAgenda,

    #[error("total voter weight {0} is even; pass an explicit tie policy to evaluate it")]
    EvenTotalWeight(u64),

    #[error("instance too large: {0}")]
    Capacity(String),

    #[error("undecided: {0}")]
    Undecided(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    Io(String),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }

    /// True for errors caused by the exact solvers' size guardrails.
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity(_) | Error::Undecided(_))
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
