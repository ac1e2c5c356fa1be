//! Pole/saddle geometry for a given phase `theta` of `z`.

use crate::complex::BigComplex;
use crate::error::{Error, Result};
use crate::precision::{PrecisionContext, Real};

#[derive(Clone, Debug)]
pub struct StokesGeometry {
    pub theta: Real,
    pub a: Real,
    /// `(theta - pi a) / a`.
    pub omega: Real,
    /// Pole image `e^{i omega}` in the `t`-plane.
    pub t0: BigComplex,
    /// Pole-saddle separation, `c^2 / 2 = 1 + i omega - e^{i omega}`.
    pub c: BigComplex,
    /// Pole position `i c` in the `u`-plane.
    pub u0: BigComplex,
}

impl StokesGeometry {
    /// Whether the pole sits on the saddle (`theta = pi a`).
    pub fn on_stokes_line(&self) -> bool {
        self.omega.is_zero()
    }
}

pub fn omega_of_theta(theta: &Real, a: &Real, ctx: &PrecisionContext) -> Real {
    let theta = ctx.round(theta);
    let a = ctx.round(a);
    ctx.round(&(&(&theta - &(&ctx.pi() * &a)) / &a))
}

/// Builds the geometry at `theta`. Any real `theta` is accepted; the branch of
/// `c` is the one continuous in `theta` through `c(pi a) = 0`.
pub fn make_geometry(theta: &Real, a: &Real, ctx: &PrecisionContext) -> Result<StokesGeometry> {
    if !a.is_positive() || *a > Real::one(a.bits()) {
        return Err(Error::InvalidParameter(format!("order a must lie in (0, 1] (got {})", a.to_sci(12))));
    }
    if !theta.is_finite() {
        return Err(Error::InvalidParameter("theta must be finite".into()));
    }
    let omega = omega_of_theta(theta, a, ctx);
    let c = c_of_omega(&omega, ctx);
    Ok(StokesGeometry {
        theta: ctx.round(theta),
        a: ctx.round(a),
        t0: BigComplex::cis(&omega),
        u0: c.mul_i(),
        c,
        omega,
    })
}

/// `c(omega)` on the branch `c = omega + i omega^2/6 - ...` near zero.
///
/// `c^2 = 4 sin^2(omega/2) + 2i (omega - sin omega)` has a non-negative real
/// part and an imaginary part with the sign of `omega`, so it never meets the
/// negative real axis for `omega != 0`. The principal root is therefore
/// continuous on each side of zero, and multiplying by `sign(omega)` joins the
/// two sides into the branch that starts like `omega`.
pub fn c_of_omega(omega: &Real, ctx: &PrecisionContext) -> BigComplex {
    if omega.is_zero() {
        return BigComplex::zero(ctx.bits());
    }
    let inner = ctx.raised(10);
    let w = inner.round(omega);
    let half_sin = (&w / 2).sin();
    let re = &half_sin.sqr() * 4;
    let im = &omega_minus_sin(&w, &inner) * 2;
    let root = BigComplex::new(re, im).sqrt();
    let c = if w.is_negative() { -root } else { root };
    c.with_bits(ctx.bits())
}

/// `omega - sin(omega)` without cancellation for small arguments.
fn omega_minus_sin(w: &Real, ctx: &PrecisionContext) -> Real {
    if w.abs().to_f64() >= 1.0 {
        return w - &w.sin();
    }
    let w2 = w.sqr();
    let tol = w.abs().log2_abs() * 3.0 - (ctx.digits() + ctx.guard()) as f64 * std::f64::consts::LOG2_10;
    // w^3/3! - w^5/5! + ...
    let mut term = &(w * &w2) / 6;
    let mut sum = term.clone();
    let mut n: i64 = 1;
    while term.log2_abs() > tol {
        term = -(&(&term * &w2) / ((2 * n + 2) * (2 * n + 3)));
        sum = &sum + &term;
        n += 1;
    }
    sum
}
