use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("generator of degree {found} does not match group degree {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("group too large: order exceeds cap {cap}")]
    GroupTooLarge { cap: usize },
    #[error("invalid characteristic {0}: must be 0 or a prime")]
    InvalidCharacteristic(u64),
    #[error("elements belong to different groups")]
    GroupMismatch,
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("map is not equivariant: {0}")]
    NotEquivariant(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(usize, usize),
    #[error("{divisor} does not divide {n}")]
    NotADivisor { divisor: usize, n: usize },
    #[error("{k} is not a unit modulo {n}")]
    NotCoprime { k: i64, n: usize },
    #[error("exponents do not form a subgroup of the units modulo {0}")]
    NotAUnitSubgroup(usize),
    #[error("singular matrix: {0}")]
    Singular(String),
    #[error("unknown subgroup class {0}")]
    UnknownClass(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
