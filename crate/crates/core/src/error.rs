use thiserror::Error;

/// Errors raised by the library operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("group enumeration exceeded cap of {cap} elements")]
    EnumerationLimit { cap: usize },
    #[error("groupoid too large: {morphisms} morphisms exceeds limit {limit}")]
    TooLarge { morphisms: u64, limit: u64 },
    #[error("group has not been enumerated")]
    NotEnumerated,
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("G-sets are over different groups")]
    GroupMismatch,
    #[error("map is not equivariant: {0}")]
    NotEquivariant(String),
    #[error("span feet do not match: {0}")]
    FootMismatch(String),
    #[error("functor mismatch: {0}")]
    Functor(String),
    #[error("unsupported field size {q}: only prime fields are implemented")]
    UnsupportedField { q: u64 },
    #[error("flag complex would have {count} flags, above the cap of {cap}")]
    FlagCap { count: usize, cap: usize },
    #[error("dots {i} and {j} are not adjacent")]
    NotAdjacent { i: usize, j: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
