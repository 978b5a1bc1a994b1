//! Error types shared across the crate.

use std::fmt;

/// Errors from exact field and matrix arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    DivisionByZero,
    SingularMatrix,
    FieldMismatch,
    ShapeMismatch { expected: usize, got: usize },
    NotPrime(u64),
    Parse(String),
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::DivisionByZero => write!(f, "division by zero"),
            AlgebraError::SingularMatrix => write!(f, "matrix is singular"),
            AlgebraError::FieldMismatch => write!(f, "operands belong to different fields"),
            AlgebraError::ShapeMismatch { expected, got } => {
                write!(f, "shape mismatch: expected {expected}, got {got}")
            }
            AlgebraError::NotPrime(p) => write!(f, "{p} is not prime"),
            AlgebraError::Parse(s) => write!(f, "parse error: {s}"),
        }
    }
}

impl std::error::Error for AlgebraError {}

/// Errors from transvection-level operations (mostly precondition violations).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TvError {
    /// The matrix is not a transvection and not the identity.
    NotTransvection,
    /// v = 0, phi = 0, or phi(v) != 0.
    InvalidPair(&'static str),
    /// A named operation precondition failed.
    Precondition(String),
}

impl fmt::Display for TvError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TvError::NotTransvection => write!(f, "matrix is not a transvection"),
            TvError::InvalidPair(why) => write!(f, "invalid (v, phi) pair: {why}"),
            TvError::Precondition(why) => write!(f, "precondition violated: {why}"),
        }
    }
}

impl std::error::Error for TvError {}

/// Errors from transvection-graph operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    NotTwoWayCycle { position: usize },
    NotACycle { position: usize },
    TooShort { len: usize },
    BadBridge(String),
    SingularCycle,
    MixedContext(&'static str),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::NotTwoWayCycle { position } => {
                write!(f, "pair at position {position} is not a two-way edge")
            }
            GraphError::NotACycle { position } => {
                write!(f, "consecutive pair at position {position} is not an edge")
            }
            GraphError::TooShort { len } => write!(f, "cycle too short: {len} < 3"),
            GraphError::BadBridge(why) => write!(f, "bad bridge: {why}"),
            GraphError::SingularCycle => write!(f, "cycle is singular"),
            GraphError::MixedContext(why) => write!(f, "mixed context: {why}"),
        }
    }
}

impl std::error::Error for GraphError {}
