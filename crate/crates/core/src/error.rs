use thiserror::Error;

use crate::solver::{InvariantViolation, Trace};

/// Malformed instance or matching text. `line` is 1-based, 0 when the problem
/// is the end of input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("pair ({man},{woman}) is out of range for {n_men} men and {n_women} women")]
    OutOfRange {
        man: usize,
        woman: usize,
        n_men: usize,
        n_women: usize,
    },
    #[error("man {0} appears in more than one pair")]
    ManReused(usize),
    #[error("woman {0} appears in more than one pair")]
    WomanReused(usize),
}

/// The solver reached a branch its correctness argument rules out. Carries the
/// trace up to the failing step.
#[derive(Debug, Clone, Error)]
#[error("invariant violated at step {step}: {violation}")]
pub struct SolverError {
    pub step: usize,
    pub violation: InvariantViolation,
    pub trace: Trace,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance with {n_men} men and {n_women} women exceeds the brute-force limit of {limit} per side")]
    TooLarge {
        n_men: usize,
        n_women: usize,
        limit: usize,
    },
}
