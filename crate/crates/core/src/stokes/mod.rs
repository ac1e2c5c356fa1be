//! The exponentially small part of `E_a(z)` near the Stokes line
//! `arg z = pi a`: geometry of the pole and saddle, the coefficient engine,
//! the near-one tables and the assembled expansion.

mod coefficients;
mod geometry;
mod near_one;
mod remainder;

pub use coefficients::{coefficients_with_fallback, f_coefficients, pole_threshold_log10, saddle_map, saddle_pole_coefficients, CoefficientPath, CoefficientSet};
pub use geometry::{c_of_omega, make_geometry, omega_of_theta, StokesGeometry};
pub use near_one::{b_tables_near_one, max_order, near_one_series, table_coefficients, TableEntry, MAX_TABLE_K, TABLE};
pub use remainder::{exp_small_at_phase, exp_small_general_theta, exp_small_remainder, leading_order_estimate, ExpansionReport, ExpansionWarning, LeadingOrder};
