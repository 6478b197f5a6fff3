use thiserror::Error;

/// Errors produced by the continued-fraction, filling and homology routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("continued fraction is empty")]
    EmptyString,

    /// A partial value `r_index` (1-based) vanished and had to be divided into.
    #[error("continued fraction is not admissible: partial value r_{index} is zero")]
    NotAdmissible { index: usize },

    #[error("entry {value} at position {position} is below 2; not an expansion string")]
    NotExpansion { position: usize, value: i64 },

    #[error("{0} is not greater than 1; no expansion with entries >= 2 exists")]
    ValueNotAboveOne(String),

    #[error("invalid lens space L({p},{q}): need gcd(p,q)=1 and 0<q<p")]
    InvalidLensSpace { p: i64, q: i64 },

    #[error("{q} and {p} are not coprime")]
    NotCoprime { q: i64, p: i64 },

    #[error("[{0}] is not an admissible zero continued fraction")]
    NotZeroString(String),

    #[error("position {position} out of range for a string of length {len}")]
    PositionOutOfRange { position: usize, len: usize },

    #[error("entry at position {position} is {value}, expected 1")]
    NotAOne { position: usize, value: i64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("integer overflow while evaluating {0}")]
    Overflow(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("ambient lattices differ: {left} vs {right} exceptional classes")]
    AmbientMismatch { left: usize, right: usize },

    #[error("matrix is not symmetric")]
    NonSymmetric,

    #[error("matrix is singular")]
    Singular,

    #[error("pattern mismatch: {0}")]
    PatternMismatch(String),

    #[error("{rule} changed the boundary homology from {before} to {after}")]
    InvariantViolation {
        rule: String,
        before: String,
        after: String,
    },

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
}

pub type Result<T> = std::result::Result<T, Error>;
