//! Independent reference formulas and identity checks shared by the
//! property tests and the acceptance run.
#![allow(dead_code)]

use mittag::algebraic::{algebraic_partial_sum, algebraic_term};
use mittag::oracle::{eval_ml_series, recursion_check, MLParams};
use mittag::specfun::erfc_complex;
use mittag::stokes::{exp_small_general_theta, f_coefficients, make_geometry};
use mittag::{BigComplex, PrecisionContext, Real, TruncatedSeries};

pub fn ctx(d: u32) -> PrecisionContext {
    PrecisionContext::with_digits(d).unwrap()
}

/// Σ c_j a^j with integer coefficients.
fn poly(a: &Real, coefs: &[i64]) -> Real {
    coefs.iter().rev().fold(Real::zero(a.bits()), |acc, &c| &(&acc * a) + &Real::from_i64(c, a.bits()))
}

/// Σ p_j T^j with real coefficients `p_j`.
fn poly_t(t: &BigComplex, p: &[Real]) -> BigComplex {
    p.iter().rev().fold(BigComplex::zero(t.bits()), |acc, c| &(&acc * t) + &BigComplex::from_real(c.clone()))
}

/// Closed forms of the even Maclaurin coefficients `alpha_0, alpha_2, alpha_4`
/// of `f(u) = t^{a+nu} / ((s/u)(t^a - T))`, with `T = e^{i a omega}`.
/// The overall factor of `alpha_2` is `+1/(12 (1-T)^3)`.
pub fn alpha_closed_forms(a: &Real, nu: &Real, t: &BigComplex) -> [BigComplex; 3] {
    let b = a.bits();
    let one = BigComplex::one(b);
    let r = |v: i64| Real::from_i64(v, b);
    let w = &one - t;
    let w2 = &w * &w;
    let w3 = &w2 * &w;
    let w4 = &w3 * &w;
    let w5 = &w4 * &w;
    let nu2 = nu.sqr();
    let nu3 = &nu2 * nu;
    let nu4 = nu2.sqr();

    let alpha0 = w.recip();

    let mut br2 = poly_t(t, &[r(1), poly(a, &[-2, 6, 6]), poly(a, &[1, -6, 6])]);
    br2 = &br2 + &(&w2 * &(&nu2 * 6));
    let lin = &w * &poly_t(t, &[r(1), poly(a, &[-1, 2])]);
    br2 = &br2 - &(&lin * &(nu * 6));
    let alpha2 = &br2 / &(&w3 * &r(12));

    let mut br4 = poly_t(
        t,
        &[
            r(1),
            &poly(a, &[-1, 9, 30, 30, 9]) * 4,
            &poly(a, &[1, -18, -20, 60, 66]) * 6,
            &poly(a, &[-1, 27, -30, -90, 99]) * 4,
            poly(a, &[1, -36, 120, -120, 36]),
        ],
    );
    br4 = &br4 + &(&w4 * &(&nu4 * 36));
    let c3 = &w3 * &poly_t(t, &[r(5), poly(a, &[-5, 6])]);
    br4 = &br4 - &(&c3 * &(&nu3 * 24));
    let c2 = &w2 * &poly_t(t, &[r(5), poly(a, &[-10, 15, 9]), poly(a, &[5, -15, 9])]);
    br4 = &br4 + &(&c2 * &(&nu2 * 24));
    let c1 = &w * &poly_t(t, &[r(3), poly(a, &[-9, 20, 30, 12]), poly(a, &[9, -40, 0, 48]), poly(a, &[-3, 20, -30, 12])]);
    br4 = &br4 - &(&c1 * &(nu * 12));
    let alpha4 = &br4 / &(&w5 * &r(864));

    [alpha0, alpha2, alpha4]
}

fn rel(got: &BigComplex, want: &BigComplex) -> f64 {
    (&(got - want).abs() / &want.abs()).to_f64()
}

/// Engine `alpha_{0,2,4}` against the closed forms at phase `theta`; returns
/// the largest relative difference.
pub fn alpha_mismatch(a: f64, nu: f64, theta: f64, digits: u32) -> f64 {
    let c = ctx(digits);
    let a = c.from_f64(a);
    let nu = c.from_f64(nu);
    let g = make_geometry(&c.from_f64(theta), &a, &c).unwrap();
    let set = f_coefficients(&a, &nu, &g, 2, &c).unwrap();
    let t = BigComplex::cis(&(&a * &g.omega));
    let want = alpha_closed_forms(&a, &nu, &t);
    (0..3).map(|k| rel(&set.alpha[k], &want[k])).fold(0.0, f64::max)
}

/// `E_a(-x) - Σ_{k≤M} term_k - R_M` relative to the largest quantity involved.
pub fn recursion_identity_residual(a: f64, x: f64, m: u64, digits: u32) -> f64 {
    let c = ctx(digits);
    let a = c.from_f64(a);
    let x = c.from_f64(x);
    let p = MLParams::standard(a.clone(), BigComplex::from_real(-&x)).unwrap();
    let e = eval_ml_series(&p, digits).unwrap().re;
    let h = algebraic_partial_sum(&a, &x, m, &c);
    let r = recursion_check(&a, &x, m, &c).unwrap().re;
    let scale = (1..=m.min(4))
        .map(|k| algebraic_term(&a, &x, k, &c).abs().to_f64())
        .chain([1.0, e.abs().to_f64(), r.abs().to_f64(), h.abs().to_f64()])
        .fold(0.0, f64::max);
    (&(&e - &h) - &r).abs().to_f64() / scale
}

/// `revert(s)(s(u)) - u` for `s = u + Σ_{j≥2} c_j u^j`; largest coefficient.
pub fn reversion_residual(coefs: &[f64], digits: u32) -> f64 {
    let c = ctx(digits);
    let mut v = vec![BigComplex::zero(c.bits()), BigComplex::one(c.bits())];
    v.extend(coefs.iter().map(|&x| BigComplex::from_real(c.from_f64(x))));
    let s = TruncatedSeries::new(v);
    let n = s.order();
    let r = s.revert().unwrap();
    let both = [r.compose(&s).unwrap(), s.compose(&r).unwrap()];
    let id = TruncatedSeries::variable(n, c.bits());
    both.iter()
        .flat_map(|w| {
            let d = w.sub(&id).unwrap();
            (0..n).map(move |k| d.coeff(k).abs().to_f64())
        })
        .fold(0.0, f64::max)
}

/// `|erfc(z) + erfc(-z) - 2|`.
pub fn erfc_reflection_residual(re: f64, im: f64, digits: u32) -> f64 {
    let c = ctx(digits);
    let z = BigComplex::new(c.from_f64(re), c.from_f64(im));
    let s = &erfc_complex(&z, &c) + &erfc_complex(&-&z, &c);
    (&s - &BigComplex::from_real(c.real(2))).abs().to_f64()
}

/// `E_{1/2}(-x)` against `e^{x^2} erfc(x)`, relative.
pub fn half_order_residual(x: f64, digits: u32) -> f64 {
    let c = ctx(digits);
    let x = c.from_f64(x);
    let p = MLParams::standard(c.parse("0.5").unwrap(), BigComplex::from_real(-&x)).unwrap();
    let e = eval_ml_series(&p, digits).unwrap();
    let want = erfc_complex(&BigComplex::from_real(x.clone()), &c).scale(&x.sqr().exp());
    rel(&e, &want)
}

/// Remainder at phase `theta` from the two cuts against the direct sum
/// `z^{-M} E_{a,1-aM}(z)`. Returns `(|difference|, |first omitted terms|)`.
pub fn phase_check(a: f64, x: f64, theta: f64, kmax: usize, digits: u32) -> (f64, f64) {
    let c = ctx(digits);
    let a = c.from_f64(a);
    let x = c.from_f64(x);
    let th = c.from_f64(theta);
    let mirror = &(&c.pi() * 2) - &th;
    let up = exp_small_general_theta(&a, &x, &th, kmax, &c).unwrap();
    let lo = exp_small_general_theta(&a, &x, &mirror, kmax, &c).unwrap();
    let r = &up.value + &lo.value.conj();
    let z = BigComplex::from_polar(&x, &th);
    let want = mittag::oracle::recursion_check_at(&a, &z, up.trunc.m, &c).unwrap();
    let diff = (&r - &want).abs().to_f64();
    (diff, (&up.est_error + &lo.est_error).to_f64())
}
