//! Truncated power series in one variable with arbitrary-precision complex
//! coefficients.
//!
//! A series of order `N` holds the coefficients of `u^0 .. u^(N-1)`; every
//! operation on order-`N` operands returns order `N` with higher terms
//! dropped. Truncation never contaminates the retained coefficients.

use crate::complex::BigComplex;
use crate::error::{Error, Result};
use crate::precision::{PrecisionContext, Real};

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigComplex>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<BigComplex>) -> Self {
        Self { coeffs }
    }

    pub fn from_reals(coeffs: impl IntoIterator<Item = Real>) -> Self {
        Self::new(coeffs.into_iter().map(BigComplex::from_real).collect())
    }

    pub fn zero(order: usize, bits: usize) -> Self {
        Self::new(vec![BigComplex::zero(bits); order])
    }

    pub fn constant(c: BigComplex, order: usize) -> Self {
        let bits = c.bits();
        let mut s = Self::zero(order, bits);
        if order > 0 {
            s.coeffs[0] = c;
        }
        s
    }

    /// The identity series `u`.
    pub fn variable(order: usize, bits: usize) -> Self {
        let mut s = Self::zero(order, bits);
        if order > 1 {
            s.coeffs[1] = BigComplex::one(bits);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigComplex] {
        &self.coeffs
    }

    pub fn coeff(&self, r: usize) -> &BigComplex {
        &self.coeffs[r]
    }

    pub fn into_coeffs(self) -> Vec<BigComplex> {
        self.coeffs
    }

    fn bits(&self) -> usize {
        self.coeffs.iter().map(BigComplex::bits).max().unwrap_or(64)
    }

    /// Rounds every coefficient to the context precision.
    pub fn rounded(&self, ctx: &PrecisionContext) -> Self {
        let bits = ctx.bits();
        Self::new(self.coeffs.iter().map(|c| c.with_bits(bits)).collect())
    }

    /// Truncates or zero-pads to `order`.
    pub fn resized(&self, order: usize) -> Self {
        let bits = self.bits();
        let mut c = self.coeffs.clone();
        c.resize(order, BigComplex::zero(bits));
        Self::new(c)
    }

    fn check_order(&self, rhs: &Self) -> Result<()> {
        if self.order() != rhs.order() {
            return Err(Error::OrderMismatch(self.order(), rhs.order()));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_order(rhs)?;
        Ok(Self::new(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_order(rhs)?;
        Ok(Self::new(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect()))
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_order(rhs)?;
        let n = self.order();
        let bits = self.bits().max(rhs.bits());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = BigComplex::zero(bits);
            for j in 0..=k {
                if self.coeffs[j].is_zero() || rhs.coeffs[k - j].is_zero() {
                    continue;
                }
                acc = &acc + &(&self.coeffs[j] * &rhs.coeffs[k - j]);
            }
            out.push(acc);
        }
        Ok(Self::new(out))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        self.check_order(rhs)?;
        let n = self.order();
        if n == 0 {
            return Ok(self.clone());
        }
        if rhs.coeffs[0].is_zero() {
            return Err(Error::DivisionBySingularSeries);
        }
        let inv0 = rhs.coeffs[0].recip();
        let mut q: Vec<BigComplex> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                acc = &acc - &(&rhs.coeffs[j] * &q[k - j]);
            }
            q.push(&acc * &inv0);
        }
        Ok(Self::new(q))
    }

    pub fn scale(&self, c: &BigComplex) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn add_constant(&self, c: &BigComplex) -> Self {
        let mut out = self.clone();
        if let Some(first) = out.coeffs.first_mut() {
            *first = &*first + c;
        }
        out
    }

    /// `outer(inner(u))` by Horner's rule.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check_order(inner)?;
        let n = self.order();
        if n == 0 {
            return Ok(self.clone());
        }
        if !inner.coeffs[0].is_zero() {
            return Err(Error::CompositionRequiresZeroConstantTerm);
        }
        let mut acc = Self::constant(self.coeffs[n - 1].clone(), n);
        for r in (0..n - 1).rev() {
            acc = acc.mul(inner)?.add_constant(&self.coeffs[r]);
        }
        Ok(acc)
    }

    /// Formal derivative, zero-padded back to the same order.
    pub fn derivative(&self) -> Self {
        let n = self.order();
        let bits = self.bits();
        let mut out: Vec<BigComplex> = (1..n).map(|r| self.coeffs[r].scale(&Real::from_i64(r as i64, bits))).collect();
        out.push(BigComplex::zero(bits));
        out.truncate(n);
        Self::new(out)
    }

    /// Divides by `u`, dropping a vanishing constant term; the order falls by one.
    pub fn shift_down(&self) -> Result<Self> {
        match self.coeffs.first() {
            Some(c0) if !c0.is_zero() => Err(Error::DivisionBySingularSeries),
            Some(_) => Ok(Self::new(self.coeffs[1..].to_vec())),
            None => Ok(self.clone()),
        }
    }

    /// `exp(s)` from `E' = s' E`.
    pub fn exp(&self) -> Self {
        let n = self.order();
        if n == 0 {
            return self.clone();
        }
        let bits = self.bits();
        let mut e = Vec::with_capacity(n);
        e.push(self.coeffs[0].exp());
        for m in 1..n {
            let mut acc = BigComplex::zero(bits);
            for k in 1..=m {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                let term = &self.coeffs[k] * &e[m - k];
                acc = &acc + &term.scale(&Real::from_i64(k as i64, bits));
            }
            e.push(acc.scale(&Real::from_i64(m as i64, bits).recip()));
        }
        Self::new(e)
    }

    /// Principal `log(s)` from `L' = s' / s`; needs `s[0] != 0`.
    pub fn ln(&self) -> Result<Self> {
        let n = self.order();
        if n == 0 {
            return Ok(self.clone());
        }
        if self.coeffs[0].is_zero() {
            return Err(Error::DivisionBySingularSeries);
        }
        let bits = self.bits();
        let inv0 = self.coeffs[0].recip();
        let mut l: Vec<BigComplex> = Vec::with_capacity(n);
        l.push(self.coeffs[0].ln());
        for m in 1..n {
            let mut acc = BigComplex::zero(bits);
            for k in 1..m {
                if self.coeffs[m - k].is_zero() {
                    continue;
                }
                acc = &acc + &(&l[k] * &self.coeffs[m - k]).scale(&Real::from_i64(k as i64, bits));
            }
            let acc = acc.scale(&Real::from_i64(m as i64, bits).recip());
            l.push(&(&self.coeffs[m] - &acc) * &inv0);
        }
        Ok(Self::new(l))
    }

    /// `s^p` on the principal branch of the constant term.
    pub fn powc(&self, p: &BigComplex) -> Result<Self> {
        Ok(self.ln()?.scale(p).exp())
    }

    /// Compositional inverse by Newton iteration: `r <- r - (s(r) - u) / s'(r)`.
    pub fn revert(&self) -> Result<Self> {
        let n = self.order();
        if n < 2 || !self.coeffs[0].is_zero() || self.coeffs[1].is_zero() {
            return Err(Error::NotRevertible);
        }
        let bits = self.bits();
        let id = Self::variable(n, bits);
        let ds = self.derivative();
        let mut r = id.scale(&self.coeffs[1].recip());
        // Each step doubles the number of exact coefficients.
        let mut correct = 2usize;
        while correct < n {
            let resid = self.compose(&r)?.sub(&id)?;
            let slope = ds.compose(&r)?;
            r = r.sub(&resid.div(&slope)?)?;
            correct *= 2;
        }
        let resid = self.compose(&r)?.sub(&id)?;
        let slope = ds.compose(&r)?;
        r.sub(&resid.div(&slope)?)
    }
}

/// Coefficientwise `lhs op rhs` rounded to `ctx`.
pub fn series_arith(lhs: &TruncatedSeries, rhs: &TruncatedSeries, op: SeriesOp, ctx: &PrecisionContext) -> Result<TruncatedSeries> {
    let out = match op {
        SeriesOp::Add => lhs.add(rhs)?,
        SeriesOp::Sub => lhs.sub(rhs)?,
        SeriesOp::Mul => lhs.mul(rhs)?,
        SeriesOp::Div => lhs.div(rhs)?,
    };
    Ok(out.rounded(ctx))
}

pub fn series_compose(outer: &TruncatedSeries, inner: &TruncatedSeries, ctx: &PrecisionContext) -> Result<TruncatedSeries> {
    Ok(outer.compose(inner)?.rounded(ctx))
}

pub fn series_revert(s: &TruncatedSeries, ctx: &PrecisionContext) -> Result<TruncatedSeries> {
    Ok(s.revert()?.rounded(ctx))
}

/// Maclaurin series of `log(1 + v)`: `v - v^2/2 + v^3/3 - ...`.
pub fn log1p_series(order: usize, bits: usize) -> TruncatedSeries {
    let coeffs = (0..order).map(|r| {
        if r == 0 {
            Real::zero(bits)
        } else {
            let v = Real::from_i64(r as i64, bits).recip();
            if r % 2 == 0 {
                -v
            } else {
                v
            }
        }
    });
    TruncatedSeries::from_reals(coeffs)
}

/// Maclaurin series of `exp(v)`.
pub fn exp_series(order: usize, bits: usize) -> TruncatedSeries {
    let mut coeffs = Vec::with_capacity(order);
    let mut c = Real::one(bits);
    for r in 0..order {
        if r > 0 {
            c = &c / r as i64;
        }
        coeffs.push(c.clone());
    }
    TruncatedSeries::from_reals(coeffs)
}
