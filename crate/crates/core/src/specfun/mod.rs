//! The two special functions the asymptotic machinery needs: gamma of a
//! real argument and erfc of a complex one.

mod erfc;
mod gamma;

pub use erfc::{erfc_complex, erfc_continued_fraction, erfc_maclaurin, switch_radius};
pub use gamma::{gamma_hp, ln_gamma_hp, rgamma_hp};
