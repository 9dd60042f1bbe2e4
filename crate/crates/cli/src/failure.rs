use std::fmt;

use ffsqfree_core::Error;

/// Errors that end a run before a report is written, by exit code.
#[derive(Debug)]
pub enum Failure {
    /// Parse, validation or hypothesis failure (exit 1).
    Invalid(anyhow::Error),
    /// Nonconstant formal leading coefficient without `--force` (exit 3).
    NonconstantLead,
    /// A size limit was hit (exit 4).
    Overflow(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Invalid(_) => 1,
            Failure::NonconstantLead => 3,
            Failure::Overflow(_) => 4,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Invalid(e) => write!(f, "{e:#}"),
            Failure::NonconstantLead => f.write_str(
                "the leading coefficient of f(a(t), t) in t is not constant; \
                 rerun with --force for the un-normalized resultant",
            ),
            Failure::Overflow(msg) => write!(f, "{msg}; raise --limit (or FFSQFREE_LIMIT)"),
        }
    }
}

impl Failure {
    /// Appends a suggestion to an overflow message.
    pub fn hint(self, text: &str) -> Self {
        match self {
            Failure::Overflow(msg) => Failure::Overflow(format!("{msg}; {text}")),
            other => other,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NonconstantLeadingCoefficient => Failure::NonconstantLead,
            Error::Overflow(msg) => Failure::Overflow(msg),
            Error::TermCap { cap } => Failure::Overflow(format!("symbolic expansion exceeded {cap} terms")),
            other => Failure::Invalid(other.into()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Invalid(e)
    }
}
