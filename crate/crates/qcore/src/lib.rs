//! Exact truncated power series in `q` with a tracked second variable `x`.
//!
//! The series type [`QSeries`] is generic over its coefficient ring; the
//! aliases below fix the common choices.

mod coeff;
mod error;
mod int;
pub mod json;
pub mod products;
mod series;

pub use coeff::Coeff;
pub use error::SeriesError;
pub use int::Int;
pub use products::{
    poch_finite, poch_finite_inverse, poch_infinite, qbinom, qbinom_coeffs, QBinomSpec,
};
pub use series::QSeries;

/// Series over machine-word integers that promote to bignums on overflow.
pub type Series = QSeries<Int>;
/// Series over arbitrary-precision integers.
pub type BigSeries = QSeries<num_bigint::BigInt>;
/// Series over exact rationals.
pub type RationalSeries = QSeries<num_rational::BigRational>;
