use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{q} is not a prime power ({factorization})")]
    NotPrimePower { q: u64, factorization: String },

    #[error("field order {q} exceeds the supported bound {max}")]
    FieldTooLarge { q: u64, max: u64 },

    #[error("division by zero in GF({q})")]
    DivisionByZero { q: u32 },

    #[error("vector has {got} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("vectors are linearly dependent")]
    LinearlyDependent,

    #[error("the span is a degenerate plane (the form vanishes on it)")]
    DegeneratePlane,

    #[error("basis pair is not symplectic: psi(x, y) = {value} != 1")]
    NotSymplecticBasis { value: u32 },

    #[error("operation requires a non-degenerate ambient space, got radical dimension {r}")]
    RadicalUnsupported { r: usize },

    #[error("operation requires half-rank n >= {min}, got n = {n}")]
    HalfRankTooSmall { n: usize, min: usize },

    #[error("frame size {m} out of range 1..={max}")]
    FrameSizeOutOfRange { m: usize, max: usize },

    #[error("{p} is not prime")]
    NotPrime { p: u64 },

    #[error("cell budget exceeded: complex has {cells} simplices, budget {budget}")]
    CellBudgetExceeded { cells: u64, budget: u64 },

    #[error("walk counts differ within class {class}: {first} vs {second}")]
    WalkClassMismatch { class: usize, first: u64, second: u64 },

    #[error("no pair of class {class} exists for n = {n}, q = {q}")]
    ClassNotRealized { class: usize, n: usize, q: u32 },

    #[error("witness pair is not unique: found {count} solutions")]
    WitnessNotUnique { count: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
