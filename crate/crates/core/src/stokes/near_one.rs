//! Coefficients `b_{2k,r}` of the expansion `B_{2k} = Σ_r b_{2k,r} omega^r`
//! for `a` near one, as polynomials in `(a, nu)`.
//!
//! Available orders: `b_{0,0..4}`, `b_{2,0..2}`, `b_{4,0..1}`.

use crate::complex::BigComplex;
use crate::error::{Error, Result};
use crate::precision::{PrecisionContext, Real};

/// One polynomial `(num/den) * (i if imaginary) * Σ coef a^p nu^q`.
pub struct TableEntry {
    pub k: usize,
    pub r: usize,
    pub imaginary: bool,
    num: i64,
    den: i64,
    /// `(coef, power of a, power of nu)`
    terms: &'static [(i64, u32, u32)],
}

pub const MAX_TABLE_K: usize = 2;

pub static TABLE: &[TableEntry] = &[
    // b_{0,0} = a/2 + nu - 1/6
    TableEntry { k: 0, r: 0, imaginary: false, num: 1, den: 6, terms: &[(3, 1, 0), (6, 0, 1), (-1, 0, 0)] },
    // b_{0,1} = -(i/12)(a^2 + 6 a nu + 6 nu^2)
    TableEntry { k: 0, r: 1, imaginary: true, num: -1, den: 12, terms: &[(1, 2, 0), (6, 1, 1), (6, 0, 2)] },
    // b_{0,2} = -(1/1080)(1 + 90 nu (a + nu)(a + 2 nu))
    TableEntry { k: 0, r: 2, imaginary: false, num: -1, den: 1080, terms: &[(1, 0, 0), (90, 2, 1), (270, 1, 2), (180, 0, 3)] },
    // b_{0,3} = -(i/12960)(1 + 18 a^4 - 540 nu^2 (a + nu)^2); the overall sign
    // is fixed by the Taylor expansion of B_0 = a e^{-i nu w}/(1 - e^{i a w}) + 1/(i c)
    TableEntry {
        k: 0,
        r: 3,
        imaginary: true,
        num: -1,
        den: 12960,
        terms: &[(1, 0, 0), (18, 4, 0), (-540, 2, 2), (-1080, 1, 3), (-540, 0, 4)],
    },
    TableEntry {
        k: 0,
        r: 4,
        imaginary: false,
        num: 1,
        den: 181440,
        terms: &[(-1, 0, 0), (-252, 4, 1), (2520, 2, 3), (3780, 1, 4), (1512, 0, 5)],
    },
    TableEntry {
        k: 1,
        r: 0,
        imaginary: false,
        num: 1,
        den: 1080,
        terms: &[
            (-2, 0, 0),
            (45, 1, 0),
            (-45, 2, 0),
            (90, 0, 1),
            (-270, 1, 1),
            (90, 2, 1),
            (-270, 0, 2),
            (270, 1, 2),
            (180, 0, 3),
        ],
    },
    TableEntry {
        k: 1,
        r: 1,
        imaginary: true,
        num: 1,
        den: 1440,
        terms: &[
            (-1, 0, 0),
            (-10, 2, 0),
            (6, 4, 0),
            (-60, 1, 1),
            (120, 2, 1),
            (-60, 0, 2),
            (360, 1, 2),
            (-180, 2, 2),
            (240, 0, 3),
            (-360, 1, 3),
            (-180, 0, 4),
        ],
    },
    TableEntry {
        k: 1,
        r: 2,
        imaginary: false,
        num: 1,
        den: 60480,
        terms: &[
            (1, 0, 0),
            (-126, 4, 0),
            (-420, 2, 1),
            (504, 4, 1),
            (-1260, 1, 2),
            (3780, 2, 2),
            (-840, 0, 3),
            (7560, 1, 3),
            (-5040, 2, 3),
            (3780, 0, 4),
            (-7560, 1, 4),
            (-3024, 0, 5),
        ],
    },
    TableEntry {
        k: 2,
        r: 0,
        imaginary: false,
        num: 1,
        den: 181440,
        terms: &[
            (65, 0, 0),
            (105, 1, 0),
            (-630, 2, 0),
            (210, 4, 0),
            (210, 0, 1),
            (-3780, 1, 1),
            (4200, 2, 1),
            (-252, 4, 1),
            (-3780, 0, 2),
            (12600, 1, 2),
            (-6300, 2, 2),
            (8400, 0, 3),
            (-12600, 1, 3),
            (2520, 2, 3),
            (-6300, 0, 4),
            (3780, 1, 4),
            (1512, 0, 5),
        ],
    },
    // b_{4,1}: overall sign fixed by the expansion of the closed-form alpha_4
    TableEntry {
        k: 2,
        r: 1,
        imaginary: true,
        num: -1,
        den: 1088640,
        terms: &[
            (2, 0, 0),
            (105, 2, 0),
            (-1260, 4, 0),
            (180, 6, 0),
            (630, 1, 1),
            (-7560, 2, 1),
            (5040, 4, 1),
            (630, 0, 2),
            (-22680, 1, 2),
            (37800, 2, 2),
            (-3780, 4, 2),
            (-15120, 0, 3),
            (75600, 1, 3),
            (-50400, 2, 3),
            (37800, 0, 4),
            (-75600, 1, 4),
            (18900, 2, 4),
            (-30240, 0, 5),
            (22680, 1, 5),
            (7560, 0, 6),
        ],
    },
];

impl TableEntry {
    pub fn eval(&self, a: &Real, nu: &Real, ctx: &PrecisionContext) -> BigComplex {
        let a = ctx.round(a);
        let nu = ctx.round(nu);
        let mut s = Real::zero(ctx.bits());
        for &(coef, pa, pn) in self.terms {
            s = &s + &(&(&a.powi(pa as u64) * &nu.powi(pn as u64)) * coef);
        }
        let v = &(&s * self.num) / self.den;
        if self.imaginary {
            BigComplex::new(Real::zero(ctx.bits()), v)
        } else {
            BigComplex::from_real(v)
        }
    }
}

/// Highest tabulated `r` for `B_{2k}`.
pub fn max_order(k: usize) -> Option<usize> {
    TABLE.iter().filter(|e| e.k == k).map(|e| e.r).max()
}

/// `b_{2k,0..}` at `(a, nu)`.
pub fn table_coefficients(a: &Real, nu: &Real, k: usize, ctx: &PrecisionContext) -> Result<Vec<BigComplex>> {
    if k > MAX_TABLE_K {
        return Err(Error::TableOrderUnavailable(k));
    }
    Ok(TABLE.iter().filter(|e| e.k == k).map(|e| e.eval(a, nu, ctx)).collect())
}

/// `B_{2k} ≈ Σ_{r ≤ rmax} b_{2k,r} omega^r` for `k = 0..=kmax`, with `rmax`
/// capped at the tabulated order of each `k`.
pub fn near_one_series(a: &Real, nu: &Real, omega: &Real, kmax: usize, rmax: usize, ctx: &PrecisionContext) -> Result<Vec<BigComplex>> {
    if kmax > MAX_TABLE_K {
        return Err(Error::TableOrderUnavailable(kmax));
    }
    let w = ctx.round(omega);
    (0..=kmax)
        .map(|k| {
            let b = table_coefficients(a, nu, k, ctx)?;
            let mut s = BigComplex::zero(ctx.bits());
            for (r, coef) in b.iter().enumerate().take(rmax.saturating_add(1)) {
                s = &s + &coef.scale(&w.powi(r as u64));
            }
            Ok(s)
        })
        .collect()
}

/// [`near_one_series`] on the negative real axis, `omega = pi (1 - a) / a`.
pub fn b_tables_near_one(a: &Real, nu: &Real, kmax: usize, rmax: usize, ctx: &PrecisionContext) -> Result<Vec<BigComplex>> {
    let a = ctx.round(a);
    let omega = &(&ctx.pi() * &(&ctx.real(1) - &a)) / &a;
    near_one_series(&a, nu, &omega, kmax, rmax, ctx)
}
