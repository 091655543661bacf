//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while constructing or verifying the exact
/// algebraic objects in this crate.
///
/// All failures are conditions the caller can act on (bad parameters,
/// mismatched carriers, singular data); internal invariant breakage panics
/// instead of being routed through this enum.
#[derive(Debug, Error)]
pub enum Error {
    /// A scalar was expected to be a primitive root of unity of a given
    /// order but is not.
    #[error("scalar is not a primitive root of unity of order {expected}: actual order {found:?}")]
    NotPrimitiveRoot {
        expected: usize,
        found: Option<usize>,
    },

    /// Taft algebras need `m >= 2`; `m = 1` has no primitive root and the
    /// skew-primitive generator collapses.
    #[error("degenerate Taft parameter m = {0}; need m >= 2")]
    DegenerateTaft(usize),

    /// Arithmetic between elements of algebras with different descriptors.
    #[error("operands live in different algebras: {0}")]
    DescriptorMismatch(String),

    /// Inversion of zero, or a zero argument where a unit is required.
    #[error("division by zero: {0}")]
    DivisionByZero(String),

    /// `d` was expected to divide `l`.
    #[error("{d} does not divide {l}")]
    NotADivisor { d: usize, l: usize },

    /// A basis exponent or group-like index lies outside its range.
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    /// A family parameter fails its defining constraint.
    #[error("invalid family parameter: {0}")]
    InvalidParameter(String),

    /// A matched pair given by raw tables fails the axiom sweep.
    #[error("matched pair fails verification: {0}")]
    InvalidMatchedPair(String),

    /// A map offered as a coalgebra map is not one.
    #[error("{component} is not a unitary coalgebra map: {detail}")]
    NotCoalgebraMap {
        component: &'static str,
        detail: String,
    },

    /// Matrix or structure dimensions do not line up.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A singular matrix where an invertible one is required.
    #[error("matrix is singular: {0}")]
    SingularMatrix(String),

    /// Two presentations that must share one instance `(n, m, qbar, q)`
    /// do not.
    #[error("instance mismatch: {0}")]
    InstanceMismatch(String),

    /// The pairwise classification disagrees with the closed counting
    /// formula; this indicates corrupted inputs rather than user error.
    #[error("classification count {computed} disagrees with formula count {formula}")]
    CountMismatch { computed: usize, formula: usize },
}
