//! Gamma and reciprocal gamma of a real argument.
//!
//! `ln Γ` comes from the Stirling series at an argument promoted upward by
//! the recurrence `Γ(y) = Γ(y+n) / ∏(y+j)`. Arguments below 1/2 go through
//! the reflection formula. Bernoulli numbers are exact, generated from the
//! integer tangent numbers.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint, Sign};

use crate::error::{Error, Result};
use crate::precision::{sin_pi, PrecisionContext, Real};

/// Extra digits carried inside gamma evaluations (the Stirling sum is
/// exponentiated, so its absolute error becomes a relative one).
const GAMMA_EXTRA_DIGITS: u32 = 6;

/// Exact `B_{2j}` for `j = 1..=n` as (numerator, denominator).
fn bernoulli_even(n: usize) -> Vec<(BigInt, BigUint)> {
    // Tangent numbers T_1..T_n (Brent & Harvey's in-place recurrence).
    let mut t: Vec<BigUint> = vec![BigUint::from(0u32); n + 1];
    if n == 0 {
        return Vec::new();
    }
    t[1] = BigUint::from(1u32);
    for k in 2..=n {
        t[k] = &t[k - 1] * BigUint::from((k - 1) as u64);
    }
    for k in 2..=n {
        for j in k..=n {
            t[j] = &t[j - 1] * BigUint::from((j - k) as u64) + &t[j] * BigUint::from((j - k + 2) as u64);
        }
    }
    // B_{2k} = (-1)^{k-1} 2k T_k / (4^k (4^k - 1))
    (1..=n)
        .map(|k| {
            let num = &t[k] * BigUint::from(2 * k as u64);
            let four_k = BigUint::from(1u32) << (2 * k);
            let den = &four_k * (&four_k - BigUint::from(1u32));
            let g = gcd(&num, &den);
            let num = BigInt::from_biguint(if k % 2 == 1 { Sign::Plus } else { Sign::Minus }, &num / &g);
            (num, &den / &g)
        })
        .collect()
}

fn gcd(a: &BigUint, b: &BigUint) -> BigUint {
    let (mut a, mut b) = (a.clone(), b.clone());
    while b != BigUint::from(0u32) {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

/// Stirling coefficients `B_{2j} / (2j (2j-1))` rounded to a given precision.
/// Cached per precision; every entry is the correctly rounded conversion of
/// an exact rational, so concurrent callers see identical values.
fn stirling_coeffs(bits: usize, count: usize) -> Arc<Vec<Real>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<Real>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    {
        let guard = cache.lock().expect("stirling cache poisoned");
        if let Some(v) = guard.get(&bits) {
            if v.len() >= count {
                return Arc::clone(v);
            }
        }
    }
    let n = count.max(16).next_power_of_two();
    let coeffs: Vec<Real> = bernoulli_even(n)
        .into_iter()
        .enumerate()
        .map(|(i, (num, den))| {
            let j = (i + 1) as u64;
            let mag = Real::from_biguint(num.magnitude(), bits + 64);
            let den = Real::from_biguint(&(den * BigUint::from(2 * j * (2 * j - 1))), bits + 64);
            let v = (&mag / &den).with_bits(bits);
            if num.sign() == Sign::Minus {
                -v
            } else {
                v
            }
        })
        .collect();
    let v = Arc::new(coeffs);
    cache.lock().expect("stirling cache poisoned").insert(bits, Arc::clone(&v));
    v
}

/// Stirling series for `ln Γ(w)` with `w` already large enough.
fn ln_gamma_stirling(w: &Real, digits: u32) -> Real {
    let bits = w.bits();
    let half_ln_2pi = (&Real::pi(bits) * 2).ln() / 2;
    let mut s = &(&(w - &Real::from_f64(0.5, bits)) * &w.ln()) - w;
    s = &s + &half_ln_2pi;
    let tol_log2 = -(digits as f64 + 2.0) * std::f64::consts::LOG2_10;
    let w2 = w.sqr();
    let mut wpow = w.clone();
    let mut count = 64;
    let mut j = 0;
    loop {
        let coeffs = stirling_coeffs(bits, count);
        while j < coeffs.len() {
            let term = &coeffs[j] / &wpow;
            s = &s + &term;
            if term.log2_abs() < tol_log2 + s.log2_abs().max(0.0) {
                return s;
            }
            wpow = &wpow * &w2;
            j += 1;
        }
        count *= 2;
    }
}

/// Promotion threshold for the Stirling series at `digits` total digits.
fn promotion_target(digits: u32) -> f64 {
    0.4 * digits as f64 + 10.0
}

/// `ln Γ(y)` for `y > 0`.
fn ln_gamma_positive(y: &Real, digits: u32) -> Real {
    let bits = y.bits();
    let target = promotion_target(digits);
    let yf = y.to_f64();
    if yf >= target {
        return ln_gamma_stirling(y, digits);
    }
    let shift = (target - yf).ceil() as i64;
    let mut prod = y.clone();
    for j in 1..shift {
        prod = &prod * &(y + j);
    }
    let w = y + shift;
    (&ln_gamma_stirling(&w, digits) - &prod.ln()).with_bits(bits)
}

fn is_nonpositive_integer(y: &Real) -> bool {
    !y.is_positive() && y.is_integer()
}

/// `Γ(y)` for real `y`, relative error below `10^(-digits)`.
pub fn gamma_hp(y: &Real, ctx: &PrecisionContext) -> Result<Real> {
    if is_nonpositive_integer(y) {
        return Err(Error::GammaPole(y.to_sci(12)));
    }
    let inner = ctx.raised(GAMMA_EXTRA_DIGITS);
    let digits = inner.digits() + inner.guard();
    let yw = inner.round(y);
    let half = inner.from_f64(0.5);
    let v = if yw < half {
        // Γ(y) = π / (sin(πy) Γ(1-y))
        let one_minus = &inner.real(1) - &yw;
        let g = ln_gamma_positive(&one_minus, digits).exp();
        &inner.pi() / &(&sin_pi(&yw) * &g)
    } else {
        ln_gamma_positive(&yw, digits).exp()
    };
    Ok(ctx.round(&v)).and_then(|v| v.ensure_finite("gamma_hp"))
}

/// `1 / Γ(y)`, exactly zero at the poles `y = 0, -1, -2, ...`.
pub fn rgamma_hp(y: &Real, ctx: &PrecisionContext) -> Real {
    if is_nonpositive_integer(y) {
        return Real::zero(ctx.bits());
    }
    let inner = ctx.raised(GAMMA_EXTRA_DIGITS);
    let digits = inner.digits() + inner.guard();
    let yw = inner.round(y);
    let v = if yw < inner.from_f64(0.5) {
        // 1/Γ(y) = sin(πy) Γ(1-y) / π
        let one_minus = &inner.real(1) - &yw;
        let g = ln_gamma_positive(&one_minus, digits).exp();
        &(&sin_pi(&yw) * &g) / &inner.pi()
    } else {
        (-ln_gamma_positive(&yw, digits)).exp()
    };
    ctx.round(&v)
}

/// `ln Γ(y)` for `y > 0`.
pub fn ln_gamma_hp(y: &Real, ctx: &PrecisionContext) -> Result<Real> {
    if !y.is_positive() {
        return Err(Error::DomainError(format!("ln_gamma_hp needs y > 0 (got {})", y.to_sci(12))));
    }
    let inner = ctx.raised(GAMMA_EXTRA_DIGITS);
    Ok(ctx.round(&ln_gamma_positive(&inner.round(y), inner.digits() + inner.guard())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::with_digits(50).unwrap()
    }

    fn rel(a: &Real, b: &Real) -> f64 {
        ((a - b) / b).abs().to_f64()
    }

    #[test]
    fn bernoulli_small_values() {
        let b = bernoulli_even(5);
        let want = [(1, 6), (-1, 30), (1, 42), (-1, 30), (5, 66)];
        for ((num, den), (wn, wd)) in b.iter().zip(want) {
            assert_eq!(*num, BigInt::from(wn));
            assert_eq!(*den, BigUint::from(wd as u32));
        }
    }

    #[test]
    fn gamma_half_is_sqrt_pi() {
        let c = ctx();
        let g = gamma_hp(&c.from_f64(0.5), &c).unwrap();
        assert!(rel(&g, &c.pi().sqrt()) < 1e-50);
    }

    #[test]
    fn gamma_twenty_is_nineteen_factorial() {
        let c = ctx();
        let g = gamma_hp(&c.real(20), &c).unwrap();
        assert!(rel(&g, &c.real(121645100408832000)) < 1e-50);
    }

    #[test]
    fn gamma_one_fifth() {
        // Γ(0.2) to 50 digits, from an independent reference evaluation.
        let c = ctx();
        let want = c.parse("4.5908437119988030532047582759291520034341099982934030177").unwrap();
        let g = gamma_hp(&c.parse("0.2").unwrap(), &c).unwrap();
        assert!(rel(&g, &want) < 1e-49);
        // Γ(0.2) = Γ(1.2) / 0.2 through the other code path.
        let g12 = gamma_hp(&c.parse("1.2").unwrap(), &c).unwrap();
        assert!(rel(&(&g12 / &c.parse("0.2").unwrap()), &g) < 1e-49);
    }

    #[test]
    fn negative_arguments_and_poles() {
        let c = ctx();
        // Γ(-1/2) = -2 sqrt(pi)
        let g = gamma_hp(&c.from_f64(-0.5), &c).unwrap();
        assert!(rel(&g, &(-(&c.pi().sqrt() * 2))) < 1e-49);
        assert!(matches!(gamma_hp(&c.real(-3), &c), Err(Error::GammaPole(_))));
        assert!(matches!(gamma_hp(&c.real(0), &c), Err(Error::GammaPole(_))));
        assert!(rgamma_hp(&c.real(-3), &c).is_zero());
        assert!(rgamma_hp(&c.real(0), &c).is_zero());
        let y = c.parse("-40.58").unwrap();
        let r = rgamma_hp(&y, &c);
        assert!(rel(&r, &gamma_hp(&y, &c).unwrap().recip()) < 1e-48);
    }

    #[test]
    fn large_argument_ln_gamma() {
        let c = ctx();
        // ln Γ(1000) reference value.
        let want = c.parse("5905.2204232091812118260769123614407898489424097154").unwrap();
        let got = ln_gamma_hp(&c.real(1000), &c).unwrap();
        assert!(rel(&got, &want) < 1e-45);
    }
}
