//! The inverse-power (algebraic) expansion of `E_a(-x)`, its optimal
//! truncation, and the exponentially small quantity left after subtracting it.

use crate::complex::BigComplex;
use crate::error::{Error, Result};
use crate::oracle::{cancellation_digits, eval_ml_series, MLParams};
use crate::precision::{sin_pi, PrecisionContext, Real};
use crate::specfun::gamma_hp;

pub const DEFAULT_TRUNCATION_CAP: u64 = 1_000_000;

/// Optimal truncation point: `a M = X + nu` with `X = x^(1/a)`.
#[derive(Clone, Debug)]
pub struct TruncationData {
    pub m: u64,
    pub nu: Real,
    pub big_x: Real,
}

pub fn optimal_truncation(a: &Real, x: &Real, ctx: &PrecisionContext) -> Result<TruncationData> {
    optimal_truncation_capped(a, x, ctx, DEFAULT_TRUNCATION_CAP)
}

pub fn optimal_truncation_capped(a: &Real, x: &Real, ctx: &PrecisionContext, cap: u64) -> Result<TruncationData> {
    check_order(a)?;
    if !x.is_positive() {
        return Err(Error::InvalidParameter(format!("x must be positive (got {})", x.to_sci(12))));
    }
    let a = ctx.round(a);
    let x = ctx.round(x);
    let big_x = x.powr(&a.recip());
    let q = (&big_x / &a).round_int();
    let m = match q.to_i64() {
        Some(m) if m >= 0 && (m as u64) <= cap => m as u64,
        _ => {
            let m = q.to_f64();
            return Err(Error::TruncationOverflow {
                m: if m.is_finite() && m < u64::MAX as f64 { m as u64 } else { u64::MAX },
                cap,
            });
        }
    };
    let nu = &(&a * &Real::from_u64(m, ctx.bits())) - &big_x;
    Ok(TruncationData { m, nu, big_x })
}

fn check_order(a: &Real) -> Result<()> {
    if !a.is_positive() || *a > Real::one(a.bits()) {
        return Err(Error::InvalidParameter(format!("order a must lie in (0, 1] (got {})", a.to_sci(12))));
    }
    Ok(())
}

/// `k`-th term `-(-x)^(-k) / Γ(1 - ak)` of the algebraic expansion, written as
/// `(-1)^(k+1) Γ(ak) sin(πak) / (π x^k)`; exactly zero when `ak` is an integer.
pub fn algebraic_term(a: &Real, x: &Real, k: u64, ctx: &PrecisionContext) -> Real {
    let inner = ctx.raised(4);
    let ak = &inner.round(a) * &Real::from_u64(k, inner.bits());
    if ak.is_integer() {
        return Real::zero(ctx.bits());
    }
    let g = gamma_hp(&ak, &inner).expect("ak > 0 is never a pole");
    let xk = inner.round(x).powi(k);
    let v = &(&g * &sin_pi(&ak)) / &(&inner.pi() * &xk);
    ctx.round(&if k % 2 == 1 { v } else { -v })
}

/// `Σ_{k=1}^{M}` of [`algebraic_term`].
pub fn algebraic_partial_sum(a: &Real, x: &Real, m: u64, ctx: &PrecisionContext) -> Real {
    let extra = ((m + 1) as f64).log10().ceil() as u32 + 2;
    let inner = ctx.raised(extra);
    let mut s = Real::zero(inner.bits());
    for k in 1..=m {
        s = &s + &algebraic_term(a, x, k, &inner);
    }
    ctx.round(&s)
}

/// `E_a(-x)` minus its optimally truncated algebraic expansion, to at least
/// `max(15, ctx.digits())` significant digits.
pub fn script_e(a: &Real, x: &Real, ctx: &PrecisionContext) -> Result<Real> {
    let trunc = optimal_truncation(a, x, ctx)?;
    script_e_at(a, x, trunc.m, ctx)
}

/// Same as [`script_e`] with an explicit truncation index.
pub fn script_e_at(a: &Real, x: &Real, m: u64, ctx: &PrecisionContext) -> Result<Real> {
    check_order(a)?;
    let want = ctx.digits().max(15);
    let mut working = cancellation_digits(a, x) + want + ctx.guard();
    loop {
        let inner = PrecisionContext::new(working, ctx.guard())?;
        let p = MLParams::standard(inner.round(a), BigComplex::from_real(-inner.round(x)))?;
        let e = eval_ml_series(&p, working)?.re;
        let h = algebraic_partial_sum(a, x, m, &inner);
        let v = &e - &h;
        // Both pieces carry absolute error about 10^-working times their size.
        let scale = e.log10_abs().max(largest_term_log10(a, x, m)).max(0.0);
        let lost = scale - v.log10_abs();
        if v.is_zero() || lost > (working - want) as f64 - 2.0 {
            let more = if v.is_zero() { working } else { (lost - (working - want) as f64).ceil() as u32 + 10 };
            working += more;
            continue;
        }
        return Ok(ctx.round(&v));
    }
}

/// `log10` of the largest `|term|` among the first `m` (the terms decrease
/// up to the least term, so only the leading ones matter).
fn largest_term_log10(a: &Real, x: &Real, m: u64) -> f64 {
    let c = PrecisionContext::with_digits(20).expect("20 digits is a valid budget");
    (1..=m.min(4))
        .map(|k| algebraic_term(a, x, k, &c).log10_abs())
        .fold(f64::NEG_INFINITY, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::rgamma_hp;

    fn ctx(d: u32) -> PrecisionContext {
        PrecisionContext::with_digits(d).unwrap()
    }

    fn real(c: &PrecisionContext, s: &str) -> Real {
        c.parse(s).unwrap()
    }

    #[test]
    fn truncation_examples() {
        let c = ctx(40);
        let t = optimal_truncation(&real(&c, "0.99"), &c.real(40), &c).unwrap();
        assert_eq!(t.m, 42);
        let want_nu = real(&c, "0.06142727181591516319842224581832814752241");
        assert!((&t.nu - &want_nu).abs().to_f64() < 1e-38);
        let want_x = real(&c, "41.51857272818408483680157775418167185248");
        assert!((&t.big_x - &want_x).abs().to_f64() < 1e-37);
        let t = optimal_truncation(&real(&c, "0.5"), &c.real(5), &c).unwrap();
        assert_eq!(t.m, 50);
        assert!(t.nu.abs().to_f64() < 1e-38);
        let t = optimal_truncation(&real(&c, "0.25"), &c.real(3), &c).unwrap();
        assert_eq!(t.m, 324);
        let t = optimal_truncation(&real(&c, "0.9"), &c.real(20), &c).unwrap();
        assert_eq!(t.m, 31);
        let t = optimal_truncation(&real(&c, "0.995"), &c.real(20), &c).unwrap();
        assert_eq!(t.m, 20);
    }

    #[test]
    fn truncation_invariants() {
        let c = ctx(30);
        for (a, x) in [("0.4", "2"), ("0.73", "11.5"), ("0.95", "20"), ("0.999", "3")] {
            let a = real(&c, a);
            let t = optimal_truncation(&a, &real(&c, x), &c).unwrap();
            let lhs = &a * &Real::from_u64(t.m, c.bits());
            assert!((&lhs - &(&t.big_x + &t.nu)).abs().to_f64() < 1e-28);
            assert!(t.nu.abs().to_f64() <= a.to_f64() / 2.0 + 0.5);
        }
    }

    #[test]
    fn truncation_cap() {
        let c = ctx(20);
        let r = optimal_truncation_capped(&real(&c, "0.1"), &c.real(10), &c, 1000);
        assert!(matches!(r, Err(Error::TruncationOverflow { cap: 1000, .. })));
    }

    #[test]
    fn term_examples() {
        let c = ctx(40);
        let half = real(&c, "0.5");
        assert!(algebraic_term(&half, &c.real(5), 2, &c).is_zero());
        let t = algebraic_term(&half, &c.real(5), 1, &c);
        let want = (&c.real(5) * &c.pi().sqrt()).recip();
        assert!(((&t - &want) / &want).abs().to_f64() < 1e-39);
        // Same term through the reciprocal gamma.
        let r = &rgamma_hp(&half, &c) / &c.real(5);
        assert!(((&t - &r) / &r).abs().to_f64() < 1e-39);
    }

    #[test]
    fn term_matches_reciprocal_gamma_form() {
        let c = ctx(30);
        let a = real(&c, "0.73");
        let x = real(&c, "6.5");
        for k in 1..12u64 {
            let y = &c.real(1) - &(&a * k as i64);
            let want = -(&rgamma_hp(&y, &c) / &(-&x).powi(k));
            let got = algebraic_term(&a, &x, k, &c);
            assert!(((&got - &want) / &want).abs().to_f64() < 1e-28, "k={k}");
        }
    }

    #[test]
    fn sign_pattern() {
        let c = ctx(20);
        let a = real(&c, "0.85");
        let x = c.real(7);
        for k in (1..40u64).filter(|k| k % 20 != 0) {
            let t = algebraic_term(&a, &x, k, &c);
            let s = sin_pi(&(&a * k as i64)).to_f64().signum() * if k % 2 == 1 { 1.0 } else { -1.0 };
            assert_eq!(t.to_f64().signum(), s, "k={k}");
        }
    }

    #[test]
    fn least_term_is_near_truncation_index() {
        let c = ctx(20);
        for (a, x) in [("0.99", "40"), ("0.9", "20"), ("0.6", "10"), ("0.75", "12")] {
            let a = real(&c, a);
            let x = real(&c, x);
            let t = optimal_truncation(&a, &x, &c).unwrap();
            // Skip the zeros of sin(πak); compare |Γ(ak)|/x^k, which carries the
            // decrease-then-increase shape.
            let mag = |k: u64| {
                let ak = &a * k as i64;
                gamma_hp(&ak, &c).unwrap().log10_abs() - k as f64 * x.log10_abs()
            };
            let kmin = (1..3 * t.m).min_by(|i, j| mag(*i).total_cmp(&mag(*j))).unwrap();
            assert!(kmin.abs_diff(t.m) <= 2, "kmin={kmin} M={}", t.m);
        }
    }

    #[test]
    fn order_one_has_no_algebraic_part() {
        let c = ctx(20);
        assert!(algebraic_partial_sum(&c.real(1), &c.real(5), 10, &c).is_zero());
        assert!(algebraic_partial_sum(&real(&c, "0.5"), &c.real(5), 0, &c).is_zero());
        let e = script_e(&c.real(1), &c.real(5), &c).unwrap();
        assert!(((&e - &c.real(-5).exp()) / &e).abs().to_f64() < 1e-19);
    }

    #[test]
    fn script_e_matches_direct_remainder() {
        let c = ctx(20);
        let a = real(&c, "0.6");
        let x = c.real(10);
        let e = script_e(&a, &x, &c).unwrap();
        assert_eq!(e.to_sci(13), "-6.895973422484e-22");
        let r = crate::oracle::recursion_check(&a, &x, 77, &c).unwrap().re;
        assert!(((&e - &r) / &r).abs().to_f64() < 1e-18);
    }

    #[test]
    fn script_e_large_order() {
        let c = ctx(20);
        let e = script_e(&real(&c, "0.99"), &c.real(40), &c).unwrap();
        assert_eq!(e.to_sci(16), "1.569133223265642e-19");
    }
}
