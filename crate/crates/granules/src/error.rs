use std::fmt;

use thiserror::Error;

/// Which side of an approximation failed to exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundSide {
    Lower,
    Upper,
}

impl fmt::Display for BoundSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundSide::Lower => write!(f, "lower"),
            BoundSide::Upper => write!(f, "upper"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("universe must have between 1 and {max} elements, got {got}")]
    UniverseSize { got: usize, max: usize },

    #[error("duplicate element name `{0}` in universe")]
    DuplicateElement(String),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("element index {index} out of bounds for universe of size {n}")]
    IndexOutOfBounds { index: usize, n: usize },

    #[error("granule blocks must be nonempty")]
    EmptyBlock,

    #[error("granule blocks overlap on element `{0}`")]
    Overlap(String),

    #[error("operands live on different universes")]
    UniverseMismatch,

    #[error("relation is not an equivalence on its field: {0}")]
    NotEquivalence(&'static str),

    #[error("information system has no attributes")]
    NoAttributes,

    #[error("duplicate attribute name `{0}`")]
    DuplicateAttribute(String),

    #[error("{what} needs {needed} entries, above the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        cap: usize,
        needed: usize,
    },

    #[error("operation requires a complete information system")]
    IncompleteSystem,

    #[error("no {0} bound exists in the definable family")]
    NoBound(BoundSide),

    #[error("cannot parse {what}: {msg}")]
    Parse { what: &'static str, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
