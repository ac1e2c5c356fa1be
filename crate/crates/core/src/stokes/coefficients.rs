//! Maclaurin coefficients of the saddle-point integrand
//! `f(u) = u t^{a+nu} / ((t - 1)(t^a - T))` with `u^2/2 = t - log t - 1`,
//! `T = e^{i a omega}`, and the pole-subtracted coefficients
//! `B_{2k} = a e^{-i nu omega} alpha_{2k} + (i c)^{-(2k+1)}`.

use crate::complex::BigComplex;
use crate::error::{Error, Result};
use crate::precision::{PrecisionContext, Real};
use crate::series::{log1p_series, TruncatedSeries};

use super::geometry::{c_of_omega, StokesGeometry};
use super::near_one::{near_one_series, MAX_TABLE_K};

/// How the `B` coefficients were obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefficientPath {
    /// Maclaurin coefficients of `f` minus the expanded pole term.
    PoleSubtraction,
    /// Pole on the saddle (`omega = 0`): Laurent expansion of `f`.
    SaddlePole,
    /// Pole too close to the saddle for subtraction: near-one tables for
    /// `k <= 2`, the `omega = 0` values above that.
    NearOneTables,
}

#[derive(Clone, Debug)]
pub struct CoefficientSet {
    /// `alpha_{2k}`, even Maclaurin coefficients of `f`; empty unless the
    /// path is [`CoefficientPath::PoleSubtraction`].
    pub alpha: Vec<BigComplex>,
    /// `B_{2k}` for `k = 0..=kmax`.
    pub b: Vec<BigComplex>,
    /// Residue constant `e^{i nu omega} / a`.
    pub residue: BigComplex,
    pub nu: Real,
    pub kmax: usize,
    pub path: CoefficientPath,
}

/// Below this `|omega|` the subtraction of the pole term would cancel away
/// every digit.
pub fn pole_threshold_log10(ctx: &PrecisionContext) -> f64 {
    -(ctx.digits() as f64) / 4.0
}

/// `s(u)` with `t = 1 + s`, to `order` coefficients:
/// `s = u + u^2/3 + u^3/36 - u^4/270 + u^5/4320 + ...`.
pub fn saddle_map(order: usize, bits: usize) -> Result<TruncatedSeries> {
    // u(s) = s sqrt(q(s)), q(s) = 2 (s - log(1 + s)) / s^2 = 2 Σ_j (-1)^j s^j / (j + 2)
    let q = TruncatedSeries::from_reals((0..order).map(|j| {
        let v = &Real::from_i64(2, bits) / (j as i64 + 2);
        if j % 2 == 0 {
            v
        } else {
            -v
        }
    }));
    let half = BigComplex::from_real(Real::from_f64(0.5, bits));
    let root = q.powc(&half)?;
    let u_of_s = root.mul(&TruncatedSeries::variable(order, bits))?;
    u_of_s.revert()
}

/// `log t = log(1 + s(u))` and `s(u)/u`, both to `order` coefficients.
fn log_t_and_ratio(order: usize, bits: usize) -> Result<(TruncatedSeries, TruncatedSeries)> {
    let s = saddle_map(order + 1, bits)?;
    let log_t = log1p_series(order + 1, bits).compose(&s)?.resized(order);
    let ratio = s.shift_down()?;
    Ok((log_t, ratio))
}

/// `alpha` and `B` coefficients at the geometry `geom` (which fixes `a` and
/// `omega`). Fails with [`Error::PoleTooCloseToSaddle`] when
/// `0 < |omega| < 10^(-digits/4)`.
pub fn f_coefficients(a: &Real, nu: &Real, geom: &StokesGeometry, kmax: usize, ctx: &PrecisionContext) -> Result<CoefficientSet> {
    if geom.on_stokes_line() {
        return saddle_pole_coefficients(a, nu, kmax, ctx);
    }
    let omega_log10 = geom.omega.log10_abs();
    if omega_log10 < pole_threshold_log10(ctx) {
        return Err(Error::PoleTooCloseToSaddle { omega: geom.omega.to_f64() });
    }
    // alpha_{2k} grows like omega^{-(2k+1)} while B_{2k} stays bounded.
    let lost = ((2 * kmax + 1) as f64 * (-omega_log10).max(0.0)).ceil() as u32;
    let inner = ctx.raised(lost + ctx.guard());
    let bits = inner.bits();
    let n = 2 * kmax + 1;

    let a_w = inner.round(a);
    let nu_w = inner.round(nu);
    let omega = inner.round(&geom.omega);
    let big_t = BigComplex::cis(&(&a_w * &omega));

    let (log_t, ratio) = log_t_and_ratio(n, bits)?;
    let t_anu = log_t.scale(&BigComplex::from_real(&a_w + &nu_w)).exp();
    let t_a = log_t.scale(&BigComplex::from_real(a_w.clone())).exp();
    let denom = ratio.mul(&t_a.add_constant(&-&big_t))?;
    let f = t_anu.div(&denom)?;

    let phase = BigComplex::cis(&-(&nu_w * &omega)).scale(&a_w);
    // The pole term must carry the same raised precision as alpha.
    let u0 = c_of_omega(&omega, &inner).mul_i();
    let u0_inv = u0.recip();
    let u0_inv2 = &u0_inv * &u0_inv;
    let mut pole = u0_inv.clone();
    let mut alpha = Vec::with_capacity(kmax + 1);
    let mut b = Vec::with_capacity(kmax + 1);
    for k in 0..=kmax {
        let al = f.coeff(2 * k).clone();
        b.push((&(&phase * &al) + &pole).with_bits(ctx.bits()));
        alpha.push(al.with_bits(ctx.bits()));
        pole = &pole * &u0_inv2;
    }
    Ok(CoefficientSet {
        alpha,
        b,
        residue: residue(a, nu, &geom.omega, ctx),
        nu: ctx.round(nu),
        kmax,
        path: CoefficientPath::PoleSubtraction,
    })
}

fn residue(a: &Real, nu: &Real, omega: &Real, ctx: &PrecisionContext) -> BigComplex {
    let a = ctx.round(a);
    BigComplex::cis(&(&ctx.round(nu) * &ctx.round(omega))).scale(&a.recip())
}

/// `omega = 0`: `f = (1/a)(1/u + g(u))`, and `h = a u f = 1 + Σ B_r u^{r+1}`.
pub fn saddle_pole_coefficients(a: &Real, nu: &Real, kmax: usize, ctx: &PrecisionContext) -> Result<CoefficientSet> {
    let inner = ctx.raised(ctx.guard());
    let bits = inner.bits();
    let n = 2 * kmax + 2;
    let a_w = inner.round(a);
    let nu_w = inner.round(nu);

    let (log_t, ratio) = log_t_and_ratio(n + 1, bits)?;
    let t_anu = log_t.scale(&BigComplex::from_real(&a_w + &nu_w)).exp().resized(n);
    let t_a = log_t.scale(&BigComplex::from_real(a_w.clone())).exp();
    // (t^a - 1) / u
    let d = t_a.add_constant(&-BigComplex::one(bits)).shift_down()?;
    let h = t_anu.scale(&BigComplex::from_real(a_w)).div(&ratio.resized(n).mul(&d)?)?;
    let b = (0..=kmax).map(|k| h.coeff(2 * k + 1).with_bits(ctx.bits())).collect();
    Ok(CoefficientSet {
        alpha: Vec::new(),
        b,
        residue: BigComplex::from_real(ctx.round(a).recip()),
        nu: ctx.round(nu),
        kmax,
        path: CoefficientPath::SaddlePole,
    })
}

/// [`f_coefficients`], falling back to the near-one tables when the pole is
/// too close to the saddle.
pub fn coefficients_with_fallback(a: &Real, nu: &Real, geom: &StokesGeometry, kmax: usize, ctx: &PrecisionContext) -> Result<CoefficientSet> {
    match f_coefficients(a, nu, geom, kmax, ctx) {
        Err(Error::PoleTooCloseToSaddle { .. }) => {
            let table = near_one_series(a, nu, &geom.omega, kmax.min(MAX_TABLE_K), usize::MAX, ctx)?;
            let limit = saddle_pole_coefficients(a, nu, kmax, ctx)?;
            let b = (0..=kmax).map(|k| table.get(k).cloned().unwrap_or_else(|| limit.b[k].clone())).collect();
            Ok(CoefficientSet {
                alpha: Vec::new(),
                b,
                residue: residue(a, nu, &geom.omega, ctx),
                nu: ctx.round(nu),
                kmax,
                path: CoefficientPath::NearOneTables,
            })
        }
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stokes::geometry::make_geometry;
    use crate::stokes::near_one::table_coefficients;

    fn ctx(d: u32) -> PrecisionContext {
        PrecisionContext::with_digits(d).unwrap()
    }

    #[test]
    fn saddle_map_coefficients() {
        let c = ctx(30);
        let s = saddle_map(6, c.bits()).unwrap();
        let want = ["0", "1", "1/3", "1/36", "-1/270", "1/4320"];
        for (r, w) in want.iter().enumerate() {
            let w = c.parse(w).unwrap();
            assert!((&s.coeff(r).re - &w).abs().to_f64() < 1e-30, "r={r}");
            assert!(s.coeff(r).im.is_zero());
        }
    }

    #[test]
    fn table_one_coefficients() {
        let c = ctx(60);
        let a = c.parse("0.99").unwrap();
        let x = c.real(40);
        let t = crate::algebraic::optimal_truncation(&a, &x, &c).unwrap();
        let g = make_geometry(&c.pi(), &a, &c).unwrap();
        let set = f_coefficients(&a, &t.nu, &g, 6, &c).unwrap();
        assert_eq!(set.path, CoefficientPath::PoleSubtraction);
        // Eleven printed digits; the tolerance is half a unit in the tenth.
        // Re B_4 is negative: the closed form for alpha_4 gives the same sign.
        let want = [
            ("3.8975364113e-1", "-3.6166205223e-3"),
            ("-6.4791569264e-3", "-2.2873163550e-5"),
            ("-1.1939771912e-3", "2.9428888000e-5"),
            ("6.7326294689e-5", "-3.3561255923e-7"),
            ("6.4497172230e-6", "-2.2913466614e-7"),
            ("-4.9612005443e-7", "4.0896790580e-9"),
            ("-3.8100530725e-8", "1.6905896799e-9"),
        ];
        let close = |got: &Real, s: &str| {
            let w = c.parse(s).unwrap();
            let half_ulp = 5.0 * 10f64.powi(w.log10_abs().floor() as i32 - 10);
            (got - &w).abs().to_f64() < half_ulp
        };
        for (k, (re, im)) in want.iter().enumerate() {
            assert!(close(&set.b[k].re, re), "Re B_{} = {}", 2 * k, set.b[k].re.to_sci(14));
            assert!(close(&set.b[k].im, im), "Im B_{} = {}", 2 * k, set.b[k].im.to_sci(14));
        }
    }

    #[test]
    fn leading_coefficient_closed_form() {
        // B_0 = a e^{-i nu omega} / (1 - e^{i a omega}) + 1/(i c)
        let c = ctx(40);
        for (a, nu, th) in [("0.9", "0.3", "pi"), ("0.7", "-0.2", "pi"), ("0.8", "0.1", "2.0")] {
            let a = c.parse(a).unwrap();
            let nu = c.parse(nu).unwrap();
            let th = if th == "pi" { c.pi() } else { c.parse(th).unwrap() };
            let g = make_geometry(&th, &a, &c).unwrap();
            let set = f_coefficients(&a, &nu, &g, 0, &c).unwrap();
            let one = BigComplex::one(c.bits());
            let t = BigComplex::cis(&(&a * &g.omega));
            let want = &(&BigComplex::cis(&-(&nu * &g.omega)).scale(&a) / &(&one - &t)) + &g.u0.recip();
            assert!((&set.b[0] - &want).abs().to_f64() < 1e-38);
            assert!((&set.alpha[0] - &(&one - &t).recip()).abs().to_f64() < 1e-38);
        }
    }

    #[test]
    fn saddle_pole_limit_matches_tables() {
        // At omega = 0 the B_{2k} reduce to b_{2k,0}.
        let c = ctx(40);
        for (a, nu) in [("0.99", "0.06"), ("1", "0"), ("0.8", "-0.3")] {
            let a = c.parse(a).unwrap();
            let nu = c.parse(nu).unwrap();
            let set = saddle_pole_coefficients(&a, &nu, 2, &c).unwrap();
            for k in 0..=2 {
                let b0 = &table_coefficients(&a, &nu, k, &c).unwrap()[0];
                assert!((&set.b[k] - b0).abs().to_f64() < 1e-38, "k={k}");
            }
        }
    }

    #[test]
    fn pole_too_close_and_fallback() {
        let c = ctx(40);
        let a = c.parse("0.9").unwrap();
        let nu = c.parse("0.2").unwrap();
        // omega = 1e-12 < 1e-10
        let th = &(&c.pi() * &a) + &(&a * &c.parse("1e-12").unwrap());
        let g = make_geometry(&th, &a, &c).unwrap();
        assert!(matches!(f_coefficients(&a, &nu, &g, 3, &c), Err(Error::PoleTooCloseToSaddle { .. })));
        let set = coefficients_with_fallback(&a, &nu, &g, 3, &c).unwrap();
        assert_eq!(set.path, CoefficientPath::NearOneTables);
        assert_eq!(set.b.len(), 4);
        // Just above the threshold the subtraction path still agrees.
        let th = &(&c.pi() * &a) + &(&a * &c.parse("1e-8").unwrap());
        let g2 = make_geometry(&th, &a, &c).unwrap();
        let direct = f_coefficients(&a, &nu, &g2, 2, &c).unwrap();
        let table = coefficients_with_fallback(&a, &nu, &g, 2, &c).unwrap();
        for k in 0..=2 {
            assert!((&direct.b[k] - &table.b[k]).abs().to_f64() < 1e-7, "k={k}");
        }
    }

    #[test]
    fn near_one_slopes() {
        // |B_{2k}(engine) - table| should scale like omega^{r_max + 1}.
        let c = ctx(60);
        let a = c.parse("0.93").unwrap();
        let nu = c.parse("0.17").unwrap();
        for (k, rmax) in [(0usize, 4usize), (1, 2), (2, 1)] {
            let mut pts = Vec::new();
            for e in [-1i64, -2, -3] {
                let w = Real::pow10(e, c.bits());
                let th = &(&c.pi() * &a) + &(&a * &w);
                let g = make_geometry(&th, &a, &c).unwrap();
                let set = f_coefficients(&a, &nu, &g, k, &c).unwrap();
                let tab = near_one_series(&a, &nu, &w, k, rmax, &c).unwrap();
                pts.push(((&set.b[k] - &tab[k]).abs().log10_abs(), e as f64));
            }
            let slope = (pts[2].0 - pts[0].0) / (pts[2].1 - pts[0].1);
            assert!(slope > rmax as f64 + 0.5, "k={k} slope={slope}");
        }
    }
}
