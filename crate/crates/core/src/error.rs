//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Everything that can go wrong while building towers, codes, and
/// equivalence transformations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The characteristic passed to the tower constructor is not prime.
    #[error("p = {0} is not prime")]
    NonPrimeP(u64),

    /// A modulus polynomial factors over its coefficient field.
    #[error("modulus {0} is reducible")]
    ReducibleModulus(String),

    /// A modulus has the wrong degree, is not monic, or is otherwise malformed.
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    /// The element does not lie in the subfield F_q.
    #[error("element is not in the base field F_q")]
    NotInBaseField,

    /// The given family of elements is not an F_q-basis of K.
    #[error("the given vectors do not form an F_q-basis of K")]
    NotABasis,

    /// Matrix shapes are incompatible for the requested operation.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// The equivalence matrix is singular over F_q.
    #[error("matrix is not invertible over F_q")]
    NotInvertible,

    /// A matrix expected over F_q has entries outside the subfield.
    #[error("matrix entry lies outside the subfield F_q")]
    NotOverSubfield,

    /// Codeword enumeration would exceed the configured cap.
    #[error("enumeration requires {required} codeword classes, above the cap {cap}")]
    TooLargeToEnumerate { required: u128, cap: u64 },

    /// Frobenius step with gcd(s, 2m) != 1.
    #[error("step s = {s} is not coprime to 2m = {two_m}")]
    InvalidStep { s: u64, two_m: u64 },

    /// Dimension outside the range allowed by the construction.
    #[error("dimension k = {k} outside the admissible range 1..={max}")]
    InvalidK { k: usize, max: usize },

    /// Target hull dimension outside 0..=k.
    #[error("target hull dimension ell = {ell} outside the admissible range 0..={max}")]
    InvalidEll { ell: usize, max: usize },

    /// The scale of a scaled trace form must be nonzero.
    #[error("lambda must be nonzero")]
    ZeroLambda,

    /// Input to the orthonormalization is not symmetric.
    #[error("matrix is not symmetric")]
    NotSymmetric,

    /// Input to the orthonormalization is degenerate.
    #[error("bilinear form is degenerate")]
    Degenerate,

    /// The form cannot be brought to the identity (non-square residual).
    #[error("form is not orthonormalizable: {0}")]
    NotOrthonormalizable(String),

    /// Binary descent requires a hull vector outside K*1_n.
    #[error("q = 2 descent needs a hull vector outside K*1_n")]
    AllOnesHullBinary,

    /// (q, n) shape not covered by the descent-witness construction.
    #[error("descent witness unsupported for q = {q}, n = {n}")]
    UnsupportedShape { q: u64, n: usize },

    /// The code already has a trivial hull.
    #[error("hull dimension is already 0")]
    AlreadyLCD,

    /// Hermitian hull variation is impossible for (q, n) = (2, 2).
    #[error("Hermitian hull variation is obstructed for (q, n) = (2, 2)")]
    Obstructed22,

    /// Requested hull dimension exceeds the current hull dimension.
    #[error("target hull dimension {target} exceeds the current hull dimension {h}")]
    TargetAboveHull { target: usize, h: usize },

    /// Parameters excluded by the prescribed-hull construction.
    #[error("parameters (q, m) = ({q}, {m}) are excluded")]
    ExcludedParameters { q: u64, m: u32 },

    /// |GL_n(F_q)| exceeds the enumeration cap.
    #[error("|GL_{n}(F_{q})| = {size} exceeds the cap {cap}")]
    GroupTooLarge { n: usize, q: u64, size: u128, cap: u64 },

    /// The operation is defined for different field parameters.
    #[error("wrong parameters: {0}")]
    WrongParameters(String),

    /// The search is stated for even q only.
    #[error("q = {0} is odd; pass allow_odd to search anyway")]
    OddCharacteristic(u64),

    /// Malformed JSON input.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
