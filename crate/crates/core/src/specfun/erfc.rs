//! Complementary error function of a complex argument.
//!
//! Three regimes:
//! - `Re w < 0`: reflection `erfc(w) = 2 - erfc(-w)`;
//! - `|w|` below the switch radius (or hugging the imaginary axis): the
//!   Maclaurin series of `erf`, summed with enough extra digits to absorb
//!   its cancellation (`2 (Re w)^2 log10 e` digits);
//! - otherwise the Laplace continued fraction
//!   `erfc w = e^{-w^2} / sqrt(pi) / (w + (1/2)/(w + 1/(w + (3/2)/(w + ...))))`.

use std::f64::consts::{LOG10_E, LOG2_10, LOG2_E};

use crate::complex::BigComplex;
use crate::precision::{PrecisionContext, Real};

const CF_MAX_TERMS: usize = 50_000;

/// Magnitude split between the Maclaurin and continued-fraction branches.
pub fn switch_radius(ctx: &PrecisionContext) -> f64 {
    (ctx.digits() as f64 / 4.0).max(4.0)
}

pub fn erfc_complex(w: &BigComplex, ctx: &PrecisionContext) -> BigComplex {
    let bits = ctx.bits();
    let w = w.with_bits(bits);
    if w.re.is_negative() {
        let two = BigComplex::from_real(ctx.real(2));
        return &two - &erfc_complex(&-&w, ctx);
    }
    let x = w.re.to_f64();
    let modulus = w.abs().to_f64();
    if modulus >= switch_radius(ctx) && x >= 1.0 {
        if let Some(v) = erfc_continued_fraction(&w, ctx) {
            return v;
        }
    }
    erfc_maclaurin(&w, ctx)
}

/// `1 - erf(w)` from the Maclaurin series, at raised precision.
pub fn erfc_maclaurin(w: &BigComplex, ctx: &PrecisionContext) -> BigComplex {
    let x = w.re.to_f64();
    let y = w.im.to_f64();
    let extra = (2.0 * x * x * LOG10_E).ceil() as u32 + 5;
    let inner = ctx.raised(extra);
    let bits = inner.bits();
    let w = w.with_bits(bits);
    let total_digits = (ctx.digits() + ctx.guard() + 3) as f64;
    let tol_log2 = ((y * y - x * x) * LOG2_E).min(0.0) - total_digits * LOG2_10;
    let neg_w2 = -(&w * &w);
    let w2_mag = neg_w2.abs().to_f64();

    let mut p = w.clone();
    let mut sum = w.clone();
    let mut n: i64 = 0;
    loop {
        n += 1;
        p = (&p * &neg_w2).scale(&Real::from_i64(n, bits).recip());
        let term = p.scale(&Real::from_i64(2 * n + 1, bits).recip());
        sum = &sum + &term;
        if (n as f64) > w2_mag && term.abs().log2_abs() < tol_log2 {
            break;
        }
    }
    let two_over_sqrt_pi = &inner.real(2) / &inner.pi().sqrt();
    let erf = sum.scale(&two_over_sqrt_pi);
    let v = &BigComplex::from_real(inner.real(1)) - &erf;
    v.with_bits(ctx.bits())
}

/// Laplace continued fraction by the modified Lentz method; `None` if it
/// fails to settle within the term budget.
pub fn erfc_continued_fraction(w: &BigComplex, ctx: &PrecisionContext) -> Option<BigComplex> {
    let inner = ctx.raised(10);
    let bits = inner.bits();
    let w = w.with_bits(bits);
    let tiny = BigComplex::from_real(Real::pow10(-2 * (inner.digits() as i64 + 20), bits));
    let tol_log2 = -((ctx.digits() + ctx.guard() + 3) as f64) * LOG2_10;
    let one = BigComplex::one(bits);

    let mut f = w.clone();
    let mut c = f.clone();
    let mut d = BigComplex::zero(bits);
    let mut converged = false;
    for n in 1..=CF_MAX_TERMS {
        let a = Real::from_i64(n as i64, bits) / 2;
        d = &w + &d.scale(&a);
        if d.is_zero() {
            d = tiny.clone();
        }
        c = &w + &c.recip().scale(&a);
        if c.is_zero() {
            c = tiny.clone();
        }
        d = d.recip();
        let delta = &c * &d;
        f = &f * &delta;
        if (&delta - &one).abs().log2_abs() < tol_log2 {
            converged = true;
            break;
        }
    }
    if !converged {
        return None;
    }
    let e = (-(&w * &w)).exp();
    let v = &e / &f.scale(&inner.pi().sqrt());
    Some(v.with_bits(ctx.bits()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::with_digits(40).unwrap()
    }

    fn cx(c: &PrecisionContext, re: &str, im: &str) -> BigComplex {
        BigComplex::new(c.parse(re).unwrap(), c.parse(im).unwrap())
    }

    fn rel(a: &BigComplex, b: &BigComplex) -> f64 {
        (a - b).abs().to_f64() / b.abs().to_f64()
    }

    #[test]
    fn erfc_zero_is_one() {
        let c = ctx();
        let v = erfc_complex(&BigComplex::zero(c.bits()), &c);
        assert!(rel(&v, &BigComplex::one(c.bits())) < 1e-40);
    }

    #[test]
    fn erfc_one() {
        let c = ctx();
        let want = cx(&c, "0.157299207050285130658779364917390740703933002033697", "0");
        let v = erfc_complex(&cx(&c, "1", "0"), &c);
        assert!(rel(&v, &want) < 1e-40);
        assert!(v.im.abs().to_f64() < 1e-40);
    }

    #[test]
    fn erfc_far_right_uses_fraction() {
        // erfc(12) reference value.
        let c = ctx();
        let want = cx(&c, "1.3562611692059042127803061565904175726667822332881e-64", "0");
        let v = erfc_complex(&cx(&c, "12", "0"), &c);
        assert!(rel(&v, &want) < 1e-39);
    }

    #[test]
    fn complex_reference_point() {
        // erfc(2 + 3i) reference value.
        let c = ctx();
        let want = cx(&c, "21.829461427614568389103088451981112874439035666354", "-8.6873182714701631444280787545418715530519896486487");
        let v = erfc_complex(&cx(&c, "2", "3"), &c);
        assert!(rel(&v, &want) < 1e-39);
    }

    #[test]
    fn seam_agreement() {
        let c = ctx();
        let r = switch_radius(&c);
        for k in 0..6 {
            let phi = -1.2 + 0.48 * k as f64;
            let w = BigComplex::from_polar(&c.from_f64(r), &c.from_f64(phi));
            let m = erfc_maclaurin(&w, &c);
            let f = erfc_continued_fraction(&w, &c).expect("fraction converges on the seam");
            let scale = (-(&w * &w)).exp().abs().to_f64().max(m.abs().to_f64());
            assert!((&m - &f).abs().to_f64() / scale < 1e-38, "phi={phi}");
        }
    }
}
