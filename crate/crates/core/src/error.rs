use thiserror::Error;

use crate::space::Subset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground set size must be between 1 and 64, got {n}")]
    InvalidGroundSize { n: u32 },

    #[error("subsets must be nonempty")]
    EmptySet,

    #[error("element {element} out of range (max {limit})")]
    OutOfRange { element: u32, limit: u32 },

    #[error("closure axiom violated: {a} and {b} intersect but {} is not connected", a.union(*b))]
    AxiomViolation { a: Subset, b: Subset },

    #[error("{part} is not connected")]
    NotConnected { part: Subset },

    #[error("vertices do not cover the ground set: {missing} uncovered")]
    CoverageGap { missing: Subset },

    #[error("expected a nonempty list of spaces")]
    EmptyList,

    #[error("{context} requires at least {min} children")]
    BadArity { context: &'static str, min: u32 },

    #[error("{what} supports n <= {limit}, got {n}")]
    TooLarge {
        what: &'static str,
        n: u32,
        limit: u32,
    },

    #[error("member {member} has fewer than 2 elements")]
    SingletonMember { member: Subset },

    #[error("member {member} reducible")]
    NotFree { member: Subset },

    #[error("largest prime factor needs a value >= 2, got {value}")]
    OutOfDomain { value: u64 },

    #[error("syntax error at byte {position}: expected {expected}")]
    Syntax { position: usize, expected: String },

    #[error("invalid input: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;
