use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A vector or matrix does not match the rank of the lattice it is used with.
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    NotSquare {
        rows: usize,
        row: usize,
        len: usize,
    },
    NotSymmetric {
        row: usize,
        col: usize,
    },
    InvalidParameter {
        name: &'static str,
        reason: String,
    },
    /// A bound evaluator was called outside its hypothesis on chi(O_X).
    WrongEvaluator {
        chi: i64,
        use_instead: &'static str,
    },
    NotIntegral {
        what: &'static str,
    },
    InvalidCandidate {
        index: usize,
        reason: String,
    },
    DuplicateCandidate {
        first: usize,
        second: usize,
    },
    TooManyCandidates {
        max: usize,
        found: usize,
    },
    /// The Gram matrix over the current negative support is not negative definite.
    IndefiniteSupport {
        support: Vec<usize>,
    },
    NonPositiveCoefficient {
        candidate: usize,
    },
    NotPseudoeffective {
        reason: String,
    },
    NonConvergence {
        steps: usize,
    },
    NoValidSubset,
    UnsupportedSurface {
        reason: String,
    },
    InvalidCurve {
        index: usize,
        reason: String,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: lattice rank is {expected}, got a vector of length {found}")
            }
            Error::NotSquare { rows, row, len } => {
                write!(
                    f,
                    "matrix is not square: {rows} rows but row {row} has {len} entries"
                )
            }
            Error::NotSymmetric { row, col } => {
                write!(f, "matrix is not symmetric at ({row}, {col})")
            }
            Error::InvalidParameter { name, reason } => {
                write!(f, "invalid parameter `{name}`: {reason}")
            }
            Error::WrongEvaluator { chi, use_instead } => {
                write!(
                    f,
                    "chi(O_X) = {chi} is outside this evaluator's hypothesis; use {use_instead}"
                )
            }
            Error::NotIntegral { what } => write!(f, "{what} must have integer coordinates"),
            Error::InvalidCandidate { index, reason } => {
                write!(f, "candidate curve #{index}: {reason}")
            }
            Error::DuplicateCandidate { first, second } => {
                write!(
                    f,
                    "candidate curves #{first} and #{second} are the same class"
                )
            }
            Error::TooManyCandidates { max, found } => {
                write!(f, "{found} candidate curves exceed the limit of {max}")
            }
            Error::IndefiniteSupport { support } => {
                write!(
                    f,
                    "Gram matrix over support {support:?} is not negative definite"
                )
            }
            Error::NonPositiveCoefficient { candidate } => {
                write!(
                    f,
                    "negative part has a non-positive coefficient on candidate #{candidate}"
                )
            }
            Error::NotPseudoeffective { reason } => {
                write!(
                    f,
                    "divisor is not pseudoeffective relative to the candidate set: {reason}"
                )
            }
            Error::NonConvergence { steps } => write!(f, "no fixpoint after {steps} enlargements"),
            Error::NoValidSubset => write!(f, "no candidate subset yields a Zariski decomposition"),
            Error::UnsupportedSurface { reason } => write!(f, "unsupported surface: {reason}"),
            Error::InvalidCurve { index, reason } => write!(f, "curve #{index}: {reason}"),
        }
    }
}

impl core::error::Error for Error {}
