//! Assembly of the erfc-smoothed exponentially small remainder.
//!
//! The upper-cut contribution at phase `theta` is
//!
//! ```text
//! J = (1/a) { exp(z^{1/a}) erfc(c sqrt(X/2)) / 2
//!             - i e^{-X - i omega X} / sqrt(2 pi X) Σ_k B_{2k} (1/2)_k (X/2)^{-k} }
//! ```
//!
//! and on the negative real axis the lower cut supplies its conjugate.

use crate::algebraic::{optimal_truncation, TruncationData};
use crate::complex::BigComplex;
use crate::error::{Error, Result};
use crate::precision::{PrecisionContext, Real};
use crate::specfun::erfc_complex;

use super::coefficients::{coefficients_with_fallback, CoefficientPath, CoefficientSet};
use super::geometry::{make_geometry, StokesGeometry};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpansionWarning {
    /// `a <= 1/3`: the negative real axis lies outside the sector where the
    /// expansion is established.
    OutsideValiditySector,
    /// Coefficients came from the near-one tables.
    NearOneTables,
}

#[derive(Clone, Debug)]
pub struct ExpansionReport {
    pub value: BigComplex,
    pub erfc_term: BigComplex,
    /// Contribution of each `B_{2k}` term, `k = 0..=kmax`.
    pub series_terms: Vec<BigComplex>,
    /// The first omitted term (`k = kmax + 1`).
    pub next_term: BigComplex,
    pub kmax_used: usize,
    pub trunc: TruncationData,
    pub geometry: StokesGeometry,
    pub coefficients: CoefficientSet,
    /// `|next_term|`; on the negative real axis only its real part survives
    /// the conjugate cut, and `|Re next_term|` is used.
    pub est_error: Real,
    pub warnings: Vec<ExpansionWarning>,
}

impl ExpansionReport {
    pub fn has_validity_warning(&self) -> bool {
        self.warnings.contains(&ExpansionWarning::OutsideValiditySector)
    }

    /// Value after the first `k + 1` series terms (`k <= kmax_used`).
    pub fn partial_value(&self, k: usize) -> BigComplex {
        self.series_terms.iter().take(k + 1).fold(self.erfc_term.clone(), |acc, t| &acc + t)
    }
}

fn check_inputs(a: &Real, x: &Real) -> Result<()> {
    if !a.is_positive() || *a > Real::one(a.bits()) {
        return Err(Error::InvalidParameter(format!("order a must lie in (0, 1] (got {})", a.to_sci(12))));
    }
    if !x.is_positive() {
        return Err(Error::InvalidParameter(format!("x must be positive (got {})", x.to_sci(12))));
    }
    Ok(())
}

/// Upper-cut contribution `J(theta)` with no domain check.
fn upper_cut(a: &Real, x: &Real, theta: &Real, kmax: usize, ctx: &PrecisionContext) -> Result<ExpansionReport> {
    check_inputs(a, x)?;
    let inner = ctx.raised(10);
    let bits = inner.bits();
    let a_w = inner.round(a);
    let trunc = optimal_truncation(a, x, &inner)?;
    if trunc.m == 0 {
        return Err(Error::InvalidParameter("x is too small: the optimal truncation index is 0".into()));
    }
    let geom = make_geometry(theta, a, &inner)?;
    let coefs = coefficients_with_fallback(a, &trunc.nu, &geom, kmax + 1, &inner)?;
    let big_x = trunc.big_x.clone();
    let a_inv = a_w.recip();

    // exp(z^{1/a}) erfc(c sqrt(X/2)) / (2a)
    let z_root = BigComplex::from_polar(&big_x, &(&inner.round(theta) / &a_w));
    let arg = geom.c.scale(&(&big_x / 2).sqrt());
    let erfc_term = (&z_root.exp() * &erfc_complex(&arg, &inner)).scale(&(&a_inv / 2));

    // -(i/a) e^{-X - i omega X} / sqrt(2 pi X)
    let phase = BigComplex::from_polar(&(-&big_x).exp(), &-(&geom.omega * &big_x));
    let norm = (&(&inner.pi() * 2) * &big_x).sqrt();
    let pref = (-phase.mul_i()).scale(&(&a_inv / &norm));

    let two_over_x = &inner.real(2) / &big_x;
    let mut weight = Real::one(bits);
    let mut terms = Vec::with_capacity(kmax + 2);
    for (k, b) in coefs.b.iter().enumerate() {
        if k > 0 {
            // (1/2)_k (2/X)^k by upward recurrence
            weight = &(&weight * &(&inner.real(2 * k as i64 - 1) / 2)) * &two_over_x;
        }
        terms.push((&pref * b).scale(&weight));
    }
    let next_term = terms.pop().expect("kmax + 1 coefficients");
    let value = terms.iter().fold(erfc_term.clone(), |acc, t| &acc + t);

    let mut warnings = Vec::new();
    // a = 1/3 given at the caller's precision counts as 1/3
    if a_w <= &inner.parse("1/3")? + &ctx.eps() {
        warnings.push(ExpansionWarning::OutsideValiditySector);
    }
    if coefs.path == CoefficientPath::NearOneTables {
        warnings.push(ExpansionWarning::NearOneTables);
    }
    let round = |v: &BigComplex| v.with_bits(ctx.bits());
    Ok(ExpansionReport {
        value: round(&value),
        erfc_term: round(&erfc_term),
        series_terms: terms.iter().map(round).collect(),
        est_error: ctx.round(&next_term.abs()),
        next_term: round(&next_term),
        kmax_used: kmax,
        trunc,
        geometry: geom,
        coefficients: coefs,
        warnings,
    })
}

/// `R_M(a; -x)` from the upper-cut expansion at `theta = pi` plus its
/// conjugate; the value is real.
pub fn exp_small_remainder(a: &Real, x: &Real, kmax: usize, ctx: &PrecisionContext) -> Result<ExpansionReport> {
    let j = upper_cut(a, x, &ctx.raised(10).pi(), kmax, ctx)?;
    let two = ctx.real(2);
    let double = |v: &BigComplex| v.scale(&two);
    let value = BigComplex::from_real(&j.value.re * &two);
    Ok(ExpansionReport {
        value,
        erfc_term: double(&j.erfc_term),
        series_terms: j.series_terms.iter().map(double).collect(),
        est_error: (&j.next_term.re * &two).abs(),
        next_term: double(&j.next_term),
        ..j
    })
}

/// The upper-cut expansion `J(theta)` for `0 < theta < 3 pi a`.
pub fn exp_small_general_theta(a: &Real, x: &Real, theta: &Real, kmax: usize, ctx: &PrecisionContext) -> Result<ExpansionReport> {
    check_inputs(a, x)?;
    let three_pi_a = &(&ctx.pi() * &ctx.round(a)) * 3;
    if !theta.is_positive() || *theta >= three_pi_a {
        return Err(Error::DomainError(format!(
            "theta = {} lies outside (0, 3 pi a) = (0, {})",
            theta.to_sci(12),
            three_pi_a.to_sci(12)
        )));
    }
    upper_cut(a, x, theta, kmax, ctx)
}

/// `R_M(a; x e^{i theta})` as `J(theta) + conj(J(2 pi - theta))`: the lower cut
/// at `theta` is the mirror image of the upper cut at `2 pi - theta`. Both
/// phases must lie in `(0, 3 pi a)`.
pub fn exp_small_at_phase(a: &Real, x: &Real, theta: &Real, kmax: usize, ctx: &PrecisionContext) -> Result<BigComplex> {
    let upper = exp_small_general_theta(a, x, theta, kmax, ctx)?;
    let mirror = &(&ctx.pi() * 2) - &ctx.round(theta);
    let lower = exp_small_general_theta(a, x, &mirror, kmax, ctx)?;
    Ok(&upper.value + &lower.value.conj())
}

#[derive(Clone, Debug)]
pub struct LeadingOrder {
    pub value: Real,
    /// `omega X`; the estimate assumes this is small.
    pub omega_x: f64,
}

impl LeadingOrder {
    pub fn in_regime(&self) -> bool {
        self.omega_x < 1.0
    }
}

/// Leading-order form of the remainder as `a -> 1`:
///
/// ```text
/// (1/a) e^{X cos(pi/a)} {1 - 2 omega X / sqrt(2 pi X)}
///   - omega e^{-X} / (a sqrt(2 pi X)) {(a/2 + nu - 1/6) X + a^2/12 + nu (a + nu)/2}
/// ```
pub fn leading_order_estimate(a: &Real, x: &Real, ctx: &PrecisionContext) -> Result<LeadingOrder> {
    check_inputs(a, x)?;
    let inner = ctx.raised(10);
    let a = inner.round(a);
    let trunc = optimal_truncation(&a, x, &inner)?;
    let big_x = &trunc.big_x;
    let nu = &trunc.nu;
    let pi = inner.pi();
    let omega = &(&pi * &(&inner.real(1) - &a)) / &a;
    let root = (&(&pi * 2) * big_x).sqrt();

    let first = &(&(big_x * &(&pi / &a).cos()).exp() / &a) * &(&inner.real(1) - &(&(&(&omega * big_x) * 2) / &root));
    let bracket = &(&(&(&(&a / 2) + nu) - &inner.parse("1/6")?) * big_x) + &(&(&a.sqr() / 12) + &(&(nu * &(&a + nu)) / 2));
    let second = &(&(&omega * &(-big_x).exp()) / &(&a * &root)) * &bracket;
    Ok(LeadingOrder {
        value: ctx.round(&(&first - &second)),
        omega_x: (&omega * big_x).to_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(d: u32) -> PrecisionContext {
        PrecisionContext::with_digits(d).unwrap()
    }

    #[test]
    fn table_two_first_column() {
        let c = ctx(40);
        let r = exp_small_remainder(&c.parse("0.99").unwrap(), &c.real(40), 6, &c).unwrap();
        assert_eq!(r.trunc.m, 42);
        // Sixteen digits as tabulated; rows 0 and 5 carry slightly inaccurate
        // trailing digits (an independent evaluation gives ...563447 and ...265556).
        let want = [
            "1.568955214563456e-19",
            "1.569130883253406e-19",
            "1.569133239439717e-19",
            "1.569133223520415e-19",
            "1.569133223261265e-19",
            "1.569133223265555e-19",
            "1.569133223265644e-19",
        ];
        for (k, w) in want.iter().enumerate() {
            let w = c.parse(w).unwrap();
            let v = r.partial_value(k).re;
            assert!(((&v - &w) / &w).abs().to_f64() < 1e-14, "k={k} got {}", v.to_sci(16));
        }
        assert_eq!(r.partial_value(0).re.to_sci(16), "1.568955214563447e-19");
        assert_eq!(r.partial_value(2).re.to_sci(16), "1.569133239439717e-19");
        assert!(r.value.im.is_zero());
        assert!(!r.has_validity_warning());
    }

    #[test]
    fn order_one_limit() {
        let c = ctx(30);
        let r = exp_small_remainder(&c.real(1), &c.real(5), 4, &c).unwrap();
        let e = c.real(-5).exp();
        assert!(((&r.value.re - &e) / &e).abs().to_f64() < 1e-29);
        let l = leading_order_estimate(&c.real(1), &c.real(5), &c).unwrap();
        assert!(((&l.value - &e) / &e).abs().to_f64() < 1e-29);
        assert_eq!(l.omega_x, 0.0);
    }

    #[test]
    fn upper_cut_at_pi_is_half_the_remainder() {
        let c = ctx(30);
        let a = c.parse("0.9").unwrap();
        let x = c.real(20);
        let j = exp_small_general_theta(&a, &x, &c.pi(), 5, &c).unwrap();
        let r = exp_small_remainder(&a, &x, 5, &c).unwrap();
        let twice = &j.value.re * 2;
        assert!(((&twice - &r.value.re) / &r.value.re).abs().to_f64() < 1e-29);
    }

    #[test]
    fn stokes_line_half_switch() {
        let c = ctx(30);
        let a = c.parse("0.9").unwrap();
        let x = c.real(20);
        let th = &c.pi() * &a;
        let j = exp_small_general_theta(&a, &x, &th, 3, &c).unwrap();
        // theta carries 30 digits, so omega is zero up to that rounding
        assert!(j.geometry.c.abs().to_f64() < 1e-29);
        let big_x = &j.trunc.big_x;
        let want = BigComplex::from_polar(&(big_x * &(&th / &a).cos()).exp(), &(big_x * &(&th / &a).sin())).scale(&(&a * 2).recip());
        assert!((&j.erfc_term - &want).abs().to_f64() < 1e-30 * want.abs().to_f64());
    }

    #[test]
    fn domain_checks() {
        let c = ctx(20);
        let a = c.parse("0.5").unwrap();
        assert!(matches!(
            exp_small_general_theta(&a, &c.real(5), &c.from_f64(5.0), 2, &c),
            Err(Error::DomainError(_))
        ));
        assert!(matches!(exp_small_general_theta(&a, &c.real(5), &c.real(0), 2, &c), Err(Error::DomainError(_))));
    }

    #[test]
    fn validity_flag_for_small_order() {
        let c = ctx(20);
        let r = exp_small_remainder(&c.parse("0.25").unwrap(), &c.real(3), 5, &c).unwrap();
        assert!(r.has_validity_warning());
        assert_eq!(r.trunc.m, 324);
    }
}
