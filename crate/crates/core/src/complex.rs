//! Arbitrary-precision complex scalar.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::precision::Real;

#[derive(Clone, PartialEq)]
pub struct BigComplex {
    pub re: Real,
    pub im: Real,
}

impl BigComplex {
    pub fn new(re: Real, im: Real) -> Self {
        Self { re, im }
    }

    pub fn from_real(re: Real) -> Self {
        let bits = re.bits();
        Self { re, im: Real::zero(bits) }
    }

    pub fn zero(bits: usize) -> Self {
        Self::from_real(Real::zero(bits))
    }

    pub fn one(bits: usize) -> Self {
        Self::from_real(Real::one(bits))
    }

    pub fn i(bits: usize) -> Self {
        Self::new(Real::zero(bits), Real::one(bits))
    }

    /// `e^{i phi}`.
    pub fn cis(phi: &Real) -> Self {
        Self::new(phi.cos(), phi.sin())
    }

    /// `r e^{i phi}`.
    pub fn from_polar(r: &Real, phi: &Real) -> Self {
        Self::new(r * &phi.cos(), r * &phi.sin())
    }

    pub fn bits(&self) -> usize {
        self.re.bits().max(self.im.bits())
    }

    pub fn with_bits(&self, bits: usize) -> Self {
        Self::new(self.re.with_bits(bits), self.im.with_bits(bits))
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn ensure_finite(self, what: &'static str) -> Result<Self> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(Error::NonFinite(what))
        }
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> Real {
        &self.re.sqr() + &self.im.sqr()
    }

    pub fn abs(&self) -> Real {
        if self.im.is_zero() {
            return self.re.abs();
        }
        if self.re.is_zero() {
            return self.im.abs();
        }
        self.norm_sqr().sqrt()
    }

    pub fn arg(&self) -> Real {
        Real::atan2(&self.im, &self.re)
    }

    /// Multiply by `i`.
    pub fn mul_i(&self) -> Self {
        Self::new(-&self.im, self.re.clone())
    }

    pub fn scale(&self, s: &Real) -> Self {
        Self::new(&self.re * s, &self.im * s)
    }

    pub fn recip(&self) -> Self {
        let d = self.norm_sqr();
        Self::new(&self.re / &d, -(&self.im / &d))
    }

    pub fn exp(&self) -> Self {
        if self.im.is_zero() {
            return Self::from_real(self.re.exp()).with_bits(self.bits());
        }
        Self::from_polar(&self.re.exp(), &self.im)
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Self {
        Self::new(self.abs().ln(), self.arg())
    }

    /// Principal square root (`Re >= 0`, branch cut on the negative axis).
    pub fn sqrt(&self) -> Self {
        let bits = self.bits();
        if self.is_zero() {
            return Self::zero(bits);
        }
        let two = Real::from_i64(2, bits);
        let m = self.abs();
        // Take the larger component from the non-cancelling combination.
        if !self.re.is_negative() {
            let re = ((&m + &self.re) / &two).sqrt();
            let im = &self.im / &(&two * &re);
            Self::new(re, im)
        } else {
            let mut im = ((&m - &self.re) / &two).sqrt();
            if self.im.is_negative() {
                im = -im;
            }
            let re = &self.im / &(&two * &im);
            Self::new(re, im)
        }
    }

    /// `self^p = exp(p ln self)` on the principal branch.
    pub fn powr(&self, p: &Real) -> Self {
        if self.is_zero() {
            return Self::zero(self.bits());
        }
        self.ln().scale(p).exp()
    }

    /// Integer power by repeated squaring; negative exponents invert.
    pub fn powi(&self, n: i64) -> Self {
        let mut base = if n < 0 { self.recip() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one(self.bits());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl fmt::Debug for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {} {}i)", self.re.to_sci(20), if self.im.is_negative() { "-" } else { "+" }, self.im.abs().to_sci(20))
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = f.precision().unwrap_or(17);
        let sign = if self.im.is_negative() { "-" } else { "+" };
        write!(f, "{} {} {}i", self.re.to_sci(sig), sign, self.im.abs().to_sci(sig))
    }
}

macro_rules! complex_forward {
    ($tr:ident, $method:ident) => {
        impl $tr<BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $method(self, rhs: BigComplex) -> BigComplex {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $method(self, rhs: &BigComplex) -> BigComplex {
                (&self).$method(rhs)
            }
        }
        impl $tr<BigComplex> for &BigComplex {
            type Output = BigComplex;
            fn $method(self, rhs: BigComplex) -> BigComplex {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn add(self, rhs: &BigComplex) -> BigComplex {
        BigComplex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn sub(self, rhs: &BigComplex) -> BigComplex {
        BigComplex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn mul(self, rhs: &BigComplex) -> BigComplex {
        if rhs.im.is_zero() {
            return self.scale(&rhs.re);
        }
        if self.im.is_zero() {
            return rhs.scale(&self.re);
        }
        BigComplex::new(
            &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        )
    }
}

impl Div<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn div(self, rhs: &BigComplex) -> BigComplex {
        if rhs.im.is_zero() {
            return BigComplex::new(&self.re / &rhs.re, &self.im / &rhs.re);
        }
        let d = rhs.norm_sqr();
        BigComplex::new(
            &(&(&self.re * &rhs.re) + &(&self.im * &rhs.im)) / &d,
            &(&(&self.im * &rhs.re) - &(&self.re * &rhs.im)) / &d,
        )
    }
}

complex_forward!(Add, add);
complex_forward!(Sub, sub);
complex_forward!(Mul, mul);
complex_forward!(Div, div);

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex::new(-&self.re, -&self.im)
    }
}

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        -&self
    }
}

impl Mul<&Real> for &BigComplex {
    type Output = BigComplex;
    fn mul(self, rhs: &Real) -> BigComplex {
        self.scale(rhs)
    }
}

impl From<Real> for BigComplex {
    fn from(re: Real) -> Self {
        BigComplex::from_real(re)
    }
}
