//! Crate-wide error type.

use thiserror::Error;

/// Errors reported by the numerical routines.
///
/// `InvalidInput` covers precondition violations (bad bands, bad sequences,
/// out-of-domain arguments); the remaining variants signal numerical
/// non-convergence and carry the best achieved residual so callers can
/// report how close the computation got.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("input contains no intervals")]
    EmptyInput,

    #[error("invalid interval [{a}, {b}]: left endpoint must be strictly smaller")]
    InvalidBand { a: f64, b: f64 },

    #[error("band count {0} exceeds the supported limit of {1}")]
    TooManyBands(usize, usize),

    #[error("argument {0} lies outside the set (or at a band endpoint)")]
    OutsideSupport(f64),

    #[error("evaluation point must lie in the open upper half-plane")]
    NotUpperHalfPlane,

    #[error("quadrature did not converge: residual {residual} after {nodes} nodes per interval")]
    QuadratureNonConvergence { residual: f64, nodes: usize },

    #[error("exchange did not converge: deviation bracket [{lower}, {upper}]")]
    ExchangeNonConvergence { lower: f64, upper: f64 },

    #[error("Newton iteration did not converge: residual {residual}")]
    NewtonNonConvergence { residual: f64 },

    #[error("critical sequence violates the {kind} condition at index {index}")]
    InvalidSequence { kind: &'static str, index: usize },

    #[error("tied critical values are not supported (indices {0} and {1})")]
    TiedCriticalValues(usize, usize),

    #[error("non-strict sequences are not supported; pass strict = true")]
    NonStrictUnsupported,

    #[error("polynomial has non-real roots (largest imaginary part {max_imag})")]
    NonRealRoots { max_imag: f64 },

    #[error("degree {0} is out of the supported range {1}..={2}")]
    DegreeOutOfRange(usize, usize, usize),

    #[error("off-diagonal entries of a Jacobi matrix must be positive (p[{0}] = {1})")]
    NonPositiveOffDiagonal(usize, f64),

    #[error("entries must be positive (index {0})")]
    NonPositiveEntry(usize),

    #[error("slit heights must be non-negative (index {0})")]
    NegativeHeight(usize),

    #[error("path must start at the anchor point {anchor}")]
    PathNotAtAnchor { anchor: f64 },

    #[error("path passes within {dist} of the branch point {re}+{im}i")]
    BranchPointNearPath { re: f64, im: f64, dist: f64 },

    #[error("path must contain at least two points")]
    PathTooShort,

    #[error("linear system is singular or badly scaled")]
    SingularSystem,

    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
