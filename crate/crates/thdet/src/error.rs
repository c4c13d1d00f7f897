//! Shared error type for every module in the crate.

use std::fmt;

/// Errors produced by symbol validation, formula evaluation, and the
/// numerical back ends.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A scalar string did not match the `[+-]p/q [+-]r/s i` grammar.
    ParseScalar(String),
    /// A rational literal had denominator zero.
    ZeroDenominator(String),
    DivisionByZero,
    /// A floating-point value became NaN or infinite.
    NonFinite(String),
    /// A pair (a, b) with 1 - a*b = 0 inside a Z-product.
    ZPole(String),
    /// Parameters that the formulas require to be distinct coincide.
    CoincidentParameters(String),
    /// Symbol evaluation at a pole.
    PoleAt(String),
    /// The symbol gets too close to zero on the unit circle.
    SymbolVanishes(String),
    /// Zero-form conversion with fewer zeros than inside poles.
    FewerZerosThanInsidePoles { zeros: usize, inside_poles: usize },
    /// A parameter that must be inverted is zero.
    ZeroParameter(String),
    /// The operator truncation needed to reach the target accuracy
    /// exceeds the hard cap.
    TruncationUnreachable { needed: usize, cap: usize },
    NotSquare { rows: usize, cols: usize },
    DimensionMismatch(String),
    /// The eigensolver failed to converge or certify a residual.
    Eigen(String),
    /// Root-set too small to define the requested modulus gap.
    DegreeTooLow(String),
    /// f - lambda*g vanished identically.
    ZeroPolynomial,
    /// Root classification impossible (unexpected root count).
    RootClassification(String),
    /// Operation not available for the requested backend or input class.
    Unsupported(String),
    /// Malformed JSON input.
    Json(String),
    Io(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ParseScalar(s) => write!(f, "malformed scalar `{s}`"),
            Error::ZeroDenominator(s) => write!(f, "zero denominator in `{s}`"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::NonFinite(what) => write!(f, "non-finite value in {what}"),
            Error::ZPole(what) => write!(f, "Z pole: {what}"),
            Error::CoincidentParameters(what) => write!(f, "coincident parameters: {what}"),
            Error::PoleAt(z) => write!(f, "pole at {z}"),
            Error::SymbolVanishes(z) => write!(f, "symbol vanishes near unit circle at {z}"),
            Error::FewerZerosThanInsidePoles { zeros, inside_poles } => write!(
                f,
                "only {zeros} zeros for {inside_poles} inside poles; determinant vanishes"
            ),
            Error::ZeroParameter(what) => write!(f, "zero parameter: {what}"),
            Error::TruncationUnreachable { needed, cap } => write!(
                f,
                "truncation {needed} exceeds cap {cap}; entries decay too slowly"
            ),
            Error::NotSquare { rows, cols } => write!(f, "matrix is {rows}x{cols}, not square"),
            Error::DimensionMismatch(what) => write!(f, "dimension mismatch: {what}"),
            Error::Eigen(what) => write!(f, "eigensolver: {what}"),
            Error::DegreeTooLow(what) => write!(f, "degree too low: {what}"),
            Error::ZeroPolynomial => write!(f, "polynomial vanishes identically"),
            Error::RootClassification(what) => write!(f, "root classification: {what}"),
            Error::Unsupported(what) => write!(f, "unsupported: {what}"),
            Error::Json(what) => write!(f, "bad JSON input: {what}"),
            Error::Io(what) => write!(f, "io error: {what}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
