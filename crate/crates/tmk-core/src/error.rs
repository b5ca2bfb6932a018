//! Error type shared by every module of the crate.

use alloc::string::String;
use core::fmt;

/// Failures reported by library operations.
///
/// Variants that correspond to mathematical preconditions carry the message
/// the command line front end prints; `Internal` signals a broken invariant
/// and should never surface for valid input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `primitive` was asked to normalise the zero vector.
    ZeroVector,
    /// A lattice sum does not have full rank in the ambient lattice.
    NotFiniteIndex,
    /// A coordinate projection lowered the rank of a lattice.
    FaceContracted,
    /// Vectors or cycles of different dimensions were combined.
    DimensionMismatch { expected: usize, found: usize },
    /// A ground set element or coordinate index is out of range.
    InvalidElement(usize),
    /// A basis family violates the matroid axioms or the size cap.
    InvalidMatroid(String),
    /// The element cannot be used for an elementary contraction.
    NotContractible(String),
    /// A cycle is not supported inside the fan it was handed to.
    NotSubcycle(String),
    /// A documented precondition of the operation fails.
    Precondition(String),
    /// The displacement search ran past its bound.
    NoAdmissibleDisplacement,
    /// A piecewise linear function disagrees across a shared face.
    Discontinuous,
    /// An invariant that the algorithms rely on was violated.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroVector => write!(f, "zero vector has no primitive representative"),
            Error::NotFiniteIndex => write!(f, "sum not finite index"),
            Error::FaceContracted => write!(f, "face contracted"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::InvalidElement(i) => write!(f, "invalid element {i}"),
            Error::InvalidMatroid(m) => write!(f, "invalid matroid: {m}"),
            Error::NotContractible(m) => write!(f, "not contractible: {m}"),
            Error::NotSubcycle(m) => write!(f, "not a subcycle: {m}"),
            Error::Precondition(m) => write!(f, "{m}"),
            Error::NoAdmissibleDisplacement => write!(f, "no admissible displacement found"),
            Error::Discontinuous => write!(f, "function is discontinuous across a shared face"),
            Error::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl core::error::Error for Error {}

/// Result alias used across the crate.
pub type Result<T> = core::result::Result<T, Error>;
