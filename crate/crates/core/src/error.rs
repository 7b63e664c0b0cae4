use thiserror::Error;

use crate::decomp::Violation;

/// Broad failure class, used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    InvalidInput,
    Validation,
    CapExceeded,
    Procedure,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("{what} is not valid: {violation}")]
    Validation { what: String, violation: Violation },

    #[error("decompositions cover different vertex sets")]
    UniverseMismatch,

    #[error("orthogonality {actual} exceeds the declared bound {bound}")]
    OrthogonalityExceeded { actual: usize, bound: usize },

    #[error("{what}: size {size} exceeds cap {cap}")]
    CapExceeded { what: String, size: u128, cap: u128 },

    #[error("invalid curve arrangement: {0}")]
    InvalidArrangement(String),

    #[error("invalid drawing: {0}")]
    InvalidDrawing(String),

    #[error("curve {curve} has {crossings} crossings, more than the cap {cap}")]
    CurveCapExceeded { curve: usize, crossings: usize, cap: usize },

    #[error("rectangles do not intersect")]
    EmptyIntersection,

    #[error("second rectangle reaches corner {corner:?} of the first")]
    CornerContained { corner: crate::rects::Corner },

    #[error("sequence is neither h-nesting nor v-nesting with respect to the reference rectangle")]
    NotNesting,

    #[error("oracle returned a shape that misses parent {parent}")]
    OracleViolation { parent: usize },

    #[error("oracle delivered {got} children, {needed} required")]
    Exhausted { got: usize, needed: usize },

    #[error("internal invariant broken: {0}")]
    InvariantBroken(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Validation { .. }
            | Error::UniverseMismatch
            | Error::OrthogonalityExceeded { .. }
            | Error::CurveCapExceeded { .. } => ErrorKind::Validation,
            Error::CapExceeded { .. } => ErrorKind::CapExceeded,
            Error::OracleViolation { .. } | Error::Exhausted { .. } | Error::InvariantBroken(_) => {
                ErrorKind::Procedure
            }
            _ => ErrorKind::InvalidInput,
        }
    }

    pub(crate) fn invalid(what: &str, violation: Violation) -> Self {
        Error::Validation {
            what: what.to_string(),
            violation,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
