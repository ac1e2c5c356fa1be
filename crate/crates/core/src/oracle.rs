//! Direct power-series evaluation of `E_{a,b}(z) = Σ z^n / Γ(an + b)`.
//!
//! Terms are summed at a working precision wide enough to absorb the
//! cancellation between the huge middle terms and a small result. After each
//! pass a rounding-error bound is compared with the requested accuracy and
//! the pass is repeated at higher precision if it falls short.

use std::f64::consts::{LOG10_E, LOG2_10};

use crate::complex::BigComplex;
use crate::error::{Error, Result};
use crate::precision::{PrecisionContext, Real};
use crate::specfun::rgamma_hp;

pub const DEFAULT_DIGIT_CAP: u32 = 10_000;
const EXTRA_GUARD: u32 = 10;

/// Parameters of `E_{a,b}(z)`.
#[derive(Clone, Debug)]
pub struct MLParams {
    pub a: Real,
    pub b: Real,
    pub z: BigComplex,
}

impl MLParams {
    pub fn new(a: Real, b: Real, z: BigComplex) -> Result<Self> {
        if !a.is_positive() || a > Real::one(a.bits()) {
            return Err(Error::InvalidParameter(format!("order a must lie in (0, 1] (got {})", a.to_sci(12))));
        }
        if !b.is_finite() || !z.is_finite() {
            return Err(Error::InvalidParameter("b and z must be finite".into()));
        }
        Ok(Self { a, b, z })
    }

    /// The one-parameter function `E_a(z)` (`b = 1`).
    pub fn standard(a: Real, z: BigComplex) -> Result<Self> {
        let b = Real::one(a.bits());
        Self::new(a, b, z)
    }
}

/// Decimal digits lost to cancellation when summing `E_a(-x)`:
/// `ceil(X log10 e) + 10` with `X = x^(1/a)`.
pub fn cancellation_digits(a: &Real, x: &Real) -> u32 {
    let big_x = x.to_f64().abs().powf(1.0 / a.to_f64());
    let d = (big_x * LOG10_E).ceil() + 10.0;
    if d >= u32::MAX as f64 {
        u32::MAX
    } else {
        d as u32
    }
}

/// `E_{a,b}(z)` with absolute error below `10^(-target_digits) max(1, |E|)`.
pub fn eval_ml_series(p: &MLParams, target_digits: u32) -> Result<BigComplex> {
    eval_ml_series_capped(p, target_digits, DEFAULT_DIGIT_CAP)
}

pub fn eval_ml_series_capped(p: &MLParams, target_digits: u32, cap: u32) -> Result<BigComplex> {
    if target_digits < PrecisionContext::MIN_DIGITS {
        return Err(Error::InvalidParameter(format!(
            "target_digits must be at least {} (got {target_digits})",
            PrecisionContext::MIN_DIGITS
        )));
    }
    let extra = cancellation_digits(&p.a, &p.z.abs());
    let v = sum_certified(p, target_digits, Accuracy::AbsoluteOrRelative, extra, cap)?;
    Ok(v.with_bits(PrecisionContext::with_digits(target_digits)?.bits()))
}

/// `R_M(a; -x) = (-x)^(-M) E_{a,1-aM}(-x)`, summed directly.
pub fn recursion_check(a: &Real, x: &Real, m: u64, ctx: &PrecisionContext) -> Result<BigComplex> {
    if !x.is_positive() {
        return Err(Error::InvalidParameter(format!("x must be positive (got {})", x.to_sci(12))));
    }
    let z = BigComplex::from_real(-x);
    recursion_check_at(a, &z, m, ctx)
}

/// `R_M(a; z) = z^(-M) E_{a,1-aM}(z)` for complex `z`, to `ctx.digits()`
/// significant digits.
pub fn recursion_check_at(a: &Real, z: &BigComplex, m: u64, ctx: &PrecisionContext) -> Result<BigComplex> {
    recursion_check_capped(a, z, m, ctx, DEFAULT_DIGIT_CAP)
}

pub fn recursion_check_capped(a: &Real, z: &BigComplex, m: u64, ctx: &PrecisionContext, cap: u32) -> Result<BigComplex> {
    if z.is_zero() {
        return Err(Error::InvalidParameter("z must be nonzero".into()));
    }
    let bits = ctx.bits().max(a.bits());
    let b = &Real::one(bits) - &(&a.with_bits(bits) * &Real::from_u64(m, bits));
    let p = MLParams::new(a.clone(), b, z.clone())?;
    // Relative to a result of size e^(-X), the e^(+X) middle terms cost
    // the cancellation estimate twice.
    let extra = cancellation_digits(a, &z.abs()).saturating_mul(2);
    let e = sum_certified(&p, ctx.digits(), Accuracy::Relative, extra, cap)?;
    let inner = ctx.raised(10);
    let zm = z.with_bits(inner.bits()).powi(m as i64);
    Ok((&e.with_bits(inner.bits()) / &zm).with_bits(ctx.bits()))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Accuracy {
    /// Error relative to `max(1, |S|)`.
    AbsoluteOrRelative,
    /// Error relative to `|S|`.
    Relative,
}

impl Accuracy {
    fn scale_log2(self, s: &BigComplex) -> f64 {
        let l = s.abs().log2_abs();
        match self {
            Accuracy::AbsoluteOrRelative => l.max(0.0),
            Accuracy::Relative => l,
        }
    }
}

fn sum_certified(p: &MLParams, target: u32, acc: Accuracy, extra: u32, cap: u32) -> Result<BigComplex> {
    if p.z.is_zero() {
        let ctx = PrecisionContext::with_digits(target)?;
        return Ok(BigComplex::from_real(rgamma_hp(&p.b, &ctx)));
    }
    let mut working = target.saturating_add(extra).saturating_add(EXTRA_GUARD);
    loop {
        if working > cap {
            return Err(Error::PrecisionBudgetExceeded { required: working, cap });
        }
        let ctx = PrecisionContext::with_digits(working)?;
        let (s, err_log2) = sum_pass(p, &ctx, target, acc);
        let allowed_log2 = acc.scale_log2(&s) - (target as f64 + 1.0) * LOG2_10;
        if err_log2 <= allowed_log2 {
            return Ok(s);
        }
        let short = ((err_log2 - allowed_log2) / LOG2_10).ceil();
        working = working.saturating_add(if short.is_finite() { short as u32 } else { cap }).saturating_add(EXTRA_GUARD);
    }
}

/// One summation pass. Returns the sum and `log2` of a bound on its
/// accumulated rounding error.
///
/// Past the poles (`an + b > 0`) the term ratio `|z| Γ(y)/Γ(y + a)` decreases
/// monotonically because `ln Γ` is convex, so once it drops to 1/2 the tail is
/// bounded by the last term.
fn sum_pass(p: &MLParams, ctx: &PrecisionContext, target: u32, acc: Accuracy) -> (BigComplex, f64) {
    let bits = ctx.bits();
    let a = p.a.with_bits(bits);
    let b = p.b.with_bits(bits);
    let z = p.z.with_bits(bits);

    let mut zn = BigComplex::one(bits);
    let mut s = BigComplex::zero(bits);
    let mut max_log2 = f64::NEG_INFINITY;
    let mut prev_log2: Option<f64> = None;
    let mut n: i64 = 0;
    loop {
        let y = &(&a * n) + &b;
        let g = rgamma_hp(&y, ctx);
        let t = zn.scale(&g);
        s = &s + &t;
        let l = t.abs().log2_abs();
        max_log2 = max_log2.max(l);
        if y.is_positive() && !g.is_zero() {
            if let Some(prev) = prev_log2 {
                let stop = acc.scale_log2(&s) - (target as f64 + 2.0) * LOG2_10 - 2.0;
                if l - prev <= -1.0 && l < stop {
                    break;
                }
            }
            prev_log2 = Some(l);
        } else {
            prev_log2 = None;
        }
        zn = &zn * &z;
        n += 1;
    }
    let count = (n + 8) as f64;
    let per_term = (-((ctx.digits() + ctx.guard()) as f64) * LOG2_10).max(count.log2() - bits as f64) + 1.0;
    (s, max_log2 + count.log2() + per_term)
}
