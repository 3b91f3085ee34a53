//! Exact verification of a family of q-series identities: the polynomials
//! `F_N(i,j,k;x)` and their limits, the recurrences they satisfy, their
//! determinant and continued-fraction forms, and the overpartitions they count.

pub mod battery;
pub mod combinatorics;
pub mod contfrac;
pub mod detform;
pub mod fnfamily;
pub mod recurrences;
pub mod report;

pub use qcore::{BigSeries, Coeff, Int, QSeries, RationalSeries, Series, SeriesError};
pub use report::{Aggregate, Report, Status};
