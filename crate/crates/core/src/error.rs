use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("element has {got} coordinates but the group has {expected} factors")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("{0} is not a valid element for this group")]
    InvalidElement(String),

    #[error("subsets belong to different groups")]
    GroupMismatch,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{0} is not a supported prime power")]
    UnsupportedPrimePower(u64),

    #[error("witness does not certify the order property: {0}")]
    InvalidWitness(String),

    #[error("no monochromatic clique among {vertices} vertices; the witness is too short for the targets")]
    NoMonochromaticClique { vertices: usize },

    #[error("bound too large to evaluate exactly ({expression})")]
    GuardExceeded { expression: String },
}

pub type Result<T> = std::result::Result<T, Error>;
