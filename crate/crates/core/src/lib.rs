//! Comb-function toolkit: equilibrium measures and Green functions of
//! finite unions of real intervals, least-deviation (Chebyshev-type)
//! polynomials, polynomials with prescribed critical values, periodic
//! Jacobi spectra, and comb-region condition checkers (Widom, sector,
//! Muckenhoupt, homogeneity).
//!
//! Everything is generic over the floating-point scalar through
//! [`scalar::Scalar`]; concrete `f64`/`f32` aliases live at the crate root.
//!
//! ```
//! use combforge_core::{minimax, potential, realset::IntervalUnion};
//!
//! let e = IntervalUnion::normalize(&[(-1.0f64, 1.0)]).unwrap();
//! let data = potential::equilibrium(&e).unwrap();
//! assert!((data.capacity() - 0.5).abs() < 1e-10);
//!
//! // monic Chebyshev: deviation 2^{1-n}
//! let cheb = minimax::remez(&e, 4).unwrap();
//! assert!((cheb.deviation - 0.125).abs() < 1e-10);
//! ```

// input validation uses `!(a < b)` so NaN fails closed
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod combs;
pub mod critpoly;
pub mod error;
pub mod jacobi;
mod linalg;
pub mod minimax;
pub mod poly;
pub mod potential;
pub mod realset;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// `f64` aliases — the precision used by the CLI and the test suites.
pub type IntervalUnion64 = realset::IntervalUnion<f64>;
pub type Polynomial64 = poly::RealPolynomial<f64>;
pub type Equilibrium64 = potential::EquilibriumData<f64>;
pub type GreenComb64 = potential::GreenComb<f64>;
pub type Chebyshev64 = minimax::ChebyshevResult<f64>;
pub type WeightedChebyshev64 = minimax::WeightedChebyshevResult<f64>;
pub type CriticalSequence64 = critpoly::CriticalSequence<f64>;
pub type PeriodicJacobi64 = jacobi::PeriodicJacobi<f64>;
pub type GeneralComb64 = combs::GeneralComb<f64>;

/// `f32` aliases for callers that trade accuracy for footprint.
pub type IntervalUnion32 = realset::IntervalUnion<f32>;
pub type Polynomial32 = poly::RealPolynomial<f32>;
pub type Equilibrium32 = potential::EquilibriumData<f32>;
pub type PeriodicJacobi32 = jacobi::PeriodicJacobi<f32>;
