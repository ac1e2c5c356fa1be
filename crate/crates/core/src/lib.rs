//! Arbitrary-precision evaluation of the Mittag-Leffler function `E_a(-x)`
//! for `0 < a < 1`: a certified power-series oracle, the optimally truncated
//! algebraic expansion, and the erfc-smoothed exponentially small remainder.

pub mod algebraic;
pub mod cli;
pub mod complex;
pub mod error;
pub mod oracle;
pub mod precision;
pub mod series;
pub mod specfun;
pub mod stokes;

pub use complex::BigComplex;
pub use error::{Error, Result};
pub use precision::{PrecisionContext, Real};
pub use series::TruncatedSeries;
