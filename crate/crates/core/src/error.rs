use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("constant term {0} is not a unit; the series has no integer inverse")]
    NonUnitConstantTerm(BigInt),

    #[error("substitution produces the negative power q^{exponent}")]
    NegativeExponent { exponent: i64 },

    #[error("infinite product starting at q^{exponent} (step {step}) does not stabilize")]
    NonConvergentProduct { exponent: i64, step: u32 },

    #[error("series is known only below q^{available}, comparison needs q^{requested}")]
    InsufficientOrder { requested: u32, available: u32 },

    #[error("weight {m} exceeds the enumeration ceiling {ceiling}")]
    CeilingExceeded { m: u32, ceiling: u32 },

    #[error("invalid class parameters: {0}")]
    InvalidClassParameters(String),

    #[error("marker part {marker} occurs {found} times, expected {expected}")]
    MarkerMultiplicityMismatch {
        marker: u32,
        expected: usize,
        found: usize,
    },

    #[error("part {part} does not fit in {columns} columns of width {width}")]
    ColumnOverflow { part: u32, columns: u32, width: u32 },

    #[error("part {part} is not larger than the marker {marker}")]
    PartTooSmall { part: u32, marker: u32 },

    #[error("expected {expected} parts, found {found}")]
    PartCountMismatch { expected: usize, found: usize },

    #[error("nested sum needs more than {budget} tuples")]
    TupleBudgetExceeded { budget: u64 },

    #[error("invalid identity parameters: {0}")]
    InvalidIdentityParameters(String),

    #[error("unknown tag `{0}`")]
    UnknownTag(String),
}
