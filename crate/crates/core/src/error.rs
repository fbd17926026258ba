use thiserror::Error;

/// Errors raised while building or querying finite lattices.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("cover relation contains a cycle through element {0}")]
    CycleDetected(u32),
    #[error("elements {0} and {1} have no unique meet or join")]
    NotALattice(u32, u32),
    #[error("element index {index} out of range for a lattice of size {size}")]
    InvalidElement { index: u32, size: usize },
    #[error("elements {0} and {1} are not comparable")]
    NotComparable(u32, u32),
    #[error("size {size} exceeds the limit of {limit}")]
    SizeLimitExceeded { size: usize, limit: usize },
    #[error("enumeration exceeded the limit of {limit} objects")]
    EnumerationLimitExceeded { limit: usize },
    #[error("argument out of range: {0}")]
    ArgumentOutOfRange(String),
    #[error("lattice is not distributive")]
    NotDistributive,
    #[error("subset is not closed under meet and join")]
    NotASublattice,
    #[error("empty lattice")]
    Empty,
    #[error("decoration violates {clause}: {detail}")]
    DecorationConflict { clause: &'static str, detail: String },
    #[error("reconstruction failed validation: {0}")]
    ReconstructionInvalid(String),
    #[error("no stabilization within {cap} steps")]
    RankExceedsCap { cap: usize },
    #[error("substitution property fails: {0}")]
    SubstitutionFailure(String),
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

pub type Result<T, E = LatticeError> = std::result::Result<T, E>;
