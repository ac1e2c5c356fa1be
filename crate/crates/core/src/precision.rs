//! Working-precision contract and the arbitrary-precision real scalar.
//!
//! A [`PrecisionContext`] is a decimal-digit budget; storage is binary
//! (`astro-float` mantissas rounded up to whole 64-bit words). Every
//! arithmetic result takes the larger precision of its operands and
//! rounds half-to-even.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::BigUint;

use crate::error::{Error, Result};

pub(crate) const RM: RoundingMode = RoundingMode::ToEven;
const LOG2_10: f64 = std::f64::consts::LOG2_10;
const WORD_BITS: usize = 64;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constant cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Decimal working precision plus guard digits carried internally.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    digits: u32,
    guard: u32,
}

impl PrecisionContext {
    pub const MIN_DIGITS: u32 = 16;
    pub const MIN_GUARD: u32 = 5;
    pub const DEFAULT_GUARD: u32 = 8;

    pub fn new(digits: u32, guard: u32) -> Result<Self> {
        if digits < Self::MIN_DIGITS {
            return Err(Error::InvalidParameter(format!(
                "digits must be at least {} (got {digits})",
                Self::MIN_DIGITS
            )));
        }
        if guard < Self::MIN_GUARD {
            return Err(Error::InvalidParameter(format!(
                "guard must be at least {} (got {guard})",
                Self::MIN_GUARD
            )));
        }
        Ok(Self { digits, guard })
    }

    pub fn with_digits(digits: u32) -> Result<Self> {
        Self::new(digits, Self::DEFAULT_GUARD)
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn guard(&self) -> u32 {
        self.guard
    }

    /// Binary mantissa length covering `digits + guard` decimal digits.
    pub fn bits(&self) -> usize {
        bits_for_digits(self.digits + self.guard)
    }

    /// Same guard, `extra` more working digits.
    pub fn raised(&self, extra: u32) -> Self {
        Self {
            digits: self.digits + extra,
            guard: self.guard,
        }
    }

    pub fn real(&self, v: i64) -> Real {
        Real::from_i64(v, self.bits())
    }

    pub fn from_f64(&self, v: f64) -> Real {
        Real::from_f64(v, self.bits())
    }

    pub fn parse(&self, s: &str) -> Result<Real> {
        Real::parse(s, self.bits())
    }

    pub fn pi(&self) -> Real {
        Real::pi(self.bits())
    }

    /// `10^(-digits)`.
    pub fn eps(&self) -> Real {
        Real::pow10(-(self.digits as i64), self.bits())
    }

    /// Rounds `x` to this context's storage precision.
    pub fn round(&self, x: &Real) -> Real {
        x.with_bits(self.bits())
    }
}

pub(crate) fn bits_for_digits(digits: u32) -> usize {
    let raw = (digits as f64 * LOG2_10).ceil() as usize;
    raw.div_ceil(WORD_BITS) * WORD_BITS
}

/// Arbitrary-precision real number.
#[derive(Clone)]
pub struct Real(BigFloat);

impl Real {
    fn wrap(v: BigFloat) -> Self {
        Real(v)
    }

    pub fn from_i64(v: i64, bits: usize) -> Self {
        Real(BigFloat::from_i64(v, bits))
    }

    pub fn from_u64(v: u64, bits: usize) -> Self {
        Real(BigFloat::from_u64(v, bits))
    }

    pub fn from_f64(v: f64, bits: usize) -> Self {
        Real(BigFloat::from_f64(v, bits))
    }

    pub fn zero(bits: usize) -> Self {
        Self::from_i64(0, bits)
    }

    pub fn one(bits: usize) -> Self {
        Self::from_i64(1, bits)
    }

    pub fn pi(bits: usize) -> Self {
        Real(with_consts(|cc| cc.pi(bits, RM)))
    }

    /// `10^k` rounded to `bits`.
    pub fn pow10(k: i64, bits: usize) -> Self {
        let ten = BigFloat::from_i64(10, bits + WORD_BITS);
        let p = ten.powi(k.unsigned_abs() as usize, bits + WORD_BITS, RM);
        let v = if k < 0 {
            BigFloat::from_i64(1, bits).div(&p, bits, RM)
        } else {
            let mut p = p;
            p.set_precision(bits, RM).expect("valid precision");
            p
        };
        Real(v)
    }

    /// Parses a decimal literal (`0.99`, `-2.5e-3`) or an exact ratio of
    /// two decimal literals (`1/3`).
    pub fn parse(s: &str, bits: usize) -> Result<Self> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let n = Self::parse(num, bits + WORD_BITS)?;
            let d = Self::parse(den, bits + WORD_BITS)?;
            if d.is_zero() {
                return Err(Error::InvalidParameter(format!("zero denominator in {s:?}")));
            }
            return Ok((&n / &d).with_bits(bits));
        }
        let valid = !s.is_empty()
            && s.chars().all(|c| c.is_ascii_digit() || "+-.eE".contains(c))
            && s.chars().any(|c| c.is_ascii_digit());
        if !valid {
            return Err(Error::InvalidParameter(format!("not a number: {s:?}")));
        }
        let v = with_consts(|cc| BigFloat::parse(s, Radix::Dec, bits, RM, cc));
        let r = Real(v);
        if !r.is_finite() {
            return Err(Error::InvalidParameter(format!("not a finite number: {s:?}")));
        }
        Ok(r)
    }

    pub fn bits(&self) -> usize {
        self.0.mantissa_max_bit_len().unwrap_or(WORD_BITS)
    }

    pub fn with_bits(&self, bits: usize) -> Self {
        let mut v = self.0.clone();
        if v.set_precision(bits, RM).is_err() {
            return self.clone();
        }
        Real(v)
    }

    pub fn is_finite(&self) -> bool {
        !self.0.is_nan() && !self.0.is_inf()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.0.is_positive()
    }

    pub fn ensure_finite(self, what: &'static str) -> Result<Self> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(Error::NonFinite(what))
        }
    }

    pub fn abs(&self) -> Self {
        Real(self.0.abs())
    }

    pub fn sqr(&self) -> Self {
        self * self
    }

    pub fn sqrt(&self) -> Self {
        Real(self.0.sqrt(self.bits(), RM))
    }

    pub fn exp(&self) -> Self {
        let p = self.bits();
        Real(with_consts(|cc| self.0.exp(p, RM, cc)))
    }

    pub fn ln(&self) -> Self {
        let p = self.bits();
        Real(with_consts(|cc| self.0.ln(p, RM, cc)))
    }

    pub fn sin(&self) -> Self {
        let p = self.bits();
        Real(with_consts(|cc| self.0.sin(p, RM, cc)))
    }

    pub fn cos(&self) -> Self {
        let p = self.bits();
        Real(with_consts(|cc| self.0.cos(p, RM, cc)))
    }

    pub fn atan(&self) -> Self {
        let p = self.bits();
        Real(with_consts(|cc| self.0.atan(p, RM, cc)))
    }

    /// Four-quadrant arctangent of `y / x`; returns 0 for the origin.
    pub fn atan2(y: &Real, x: &Real) -> Self {
        let bits = y.bits().max(x.bits());
        if x.is_zero() {
            if y.is_zero() {
                return Real::zero(bits);
            }
            let half_pi = &Real::pi(bits) / &Real::from_i64(2, bits);
            return if y.is_negative() { -half_pi } else { half_pi };
        }
        // atan is evaluated on |ratio| <= 1 to stay well conditioned.
        if x.abs() >= y.abs() {
            let base = (y / x).atan();
            if x.is_positive() {
                base
            } else if y.is_negative() {
                base - Real::pi(bits)
            } else {
                base + Real::pi(bits)
            }
        } else {
            let half_pi = &Real::pi(bits) / &Real::from_i64(2, bits);
            let base = (x / y).atan();
            if y.is_positive() {
                half_pi - base
            } else {
                -half_pi - base
            }
        }
    }

    /// `self^n` for a non-negative integer exponent.
    pub fn powi(&self, n: u64) -> Self {
        Real(self.0.powi(n as usize, self.bits(), RM))
    }

    /// `self^y = exp(y ln self)` for `self > 0`.
    pub fn powr(&self, y: &Real) -> Self {
        (y * &self.ln()).exp()
    }

    pub fn recip(&self) -> Self {
        Real(self.0.reciprocal(self.bits(), RM))
    }

    /// Nearest integer, ties to even.
    pub fn round_int(&self) -> Self {
        Real(self.0.round(0, RM))
    }

    pub fn floor(&self) -> Self {
        Real(self.0.floor())
    }

    /// Integer value as `i64` (after rounding to nearest); `None` if out of range.
    pub fn to_i64(&self) -> Option<i64> {
        let r = self.round_int();
        let f = r.to_f64();
        if f.abs() < 9.0e15 {
            Some(f as i64)
        } else {
            None
        }
    }

    /// Whether the value is an exact integer.
    pub fn is_integer(&self) -> bool {
        self.is_zero() || self.0.is_int()
    }

    /// Approximate `log2 |self|`, valid far outside the `f64` exponent range.
    /// Returns `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        match self.0.as_raw_parts() {
            Some((words, _, _, e, _)) if !self.is_zero() => {
                let msw = *words.last().expect("non-empty mantissa") as f64;
                e as f64 + (msw / 2f64.powi(64)).log2()
            }
            _ => f64::NEG_INFINITY,
        }
    }

    pub fn log10_abs(&self) -> f64 {
        self.log2_abs() / LOG2_10
    }

    /// Nearest `f64` (overflow to infinity, underflow to zero).
    pub fn to_f64(&self) -> f64 {
        match self.0.as_raw_parts() {
            Some((words, _, s, e, _)) if !self.is_zero() => {
                let msw = *words.last().expect("non-empty mantissa") as f64 / 2f64.powi(64);
                let next = if words.len() > 1 {
                    words[words.len() - 2] as f64 / 2f64.powi(128)
                } else {
                    0.0
                };
                let e = (e as i64).clamp(-1100, 1100) as i32;
                // split the scaling so 2^e never underflows on its own
                let mag = (msw + next) * 2f64.powi(e / 2) * 2f64.powi(e - e / 2);
                if s == Sign::Neg {
                    -mag
                } else {
                    mag
                }
            }
            _ => 0.0,
        }
    }

    /// Magnitude of an integer-valued real as a `BigUint` (fractional part dropped).
    pub(crate) fn to_biguint(&self) -> BigUint {
        let int = self.0.int();
        match int.as_raw_parts() {
            Some((words, _, _, e, _)) if !int.is_zero() => {
                let limbs: Vec<u32> = words
                    .iter()
                    .flat_map(|w| [(*w & 0xffff_ffff) as u32, (*w >> 32) as u32])
                    .collect();
                let m = BigUint::new(limbs);
                let shift = e as i64 - (words.len() * WORD_BITS) as i64;
                if shift >= 0 {
                    m << shift as u64
                } else {
                    m >> (-shift) as u64
                }
            }
            _ => BigUint::from(0u32),
        }
    }

    pub(crate) fn from_biguint(n: &BigUint, bits: usize) -> Self {
        let p = bits + WORD_BITS;
        let shift = Real::from_i64(2, p).powi(64);
        let mut acc = Real::zero(p);
        for d in n.to_u64_digits().iter().rev() {
            acc = &(&acc * &shift) + &Real::from_u64(*d, p);
        }
        acc.with_bits(bits)
    }

    /// Scientific notation with `sig` significant digits, half-to-even
    /// rounding, and an explicit exponent (`-1.5691332232565642e-19`).
    pub fn to_sci(&self, sig: usize) -> String {
        let sig = sig.max(1);
        if self.is_zero() {
            return format!("{}e0", if sig > 1 { format!("0.{}", "0".repeat(sig - 1)) } else { "0".into() });
        }
        if !self.is_finite() {
            return "nan".into();
        }
        let bits = self.bits().max(bits_for_digits(sig as u32 + 10)) + WORD_BITS;
        let x = self.abs().with_bits(bits);
        let mut e10 = self.log10_abs().floor() as i64;
        let lower = BigUint::from(10u32).pow(sig as u32 - 1);
        let upper = BigUint::from(10u32).pow(sig as u32);
        let mut m;
        loop {
            let scaled = &x * &Real::pow10(sig as i64 - 1 - e10, bits);
            m = scaled.round_int().to_biguint();
            if m >= upper {
                e10 += 1;
            } else if m < lower {
                e10 -= 1;
            } else {
                break;
            }
        }
        let digits = m.to_string();
        let sign = if self.is_negative() { "-" } else { "" };
        let (head, tail) = digits.split_at(1);
        if tail.is_empty() {
            format!("{sign}{head}e{e10}")
        } else {
            format!("{sign}{head}.{tail}e{e10}")
        }
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({})", self.to_sci(20))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = f.precision().unwrap_or(17);
        f.write_str(&self.to_sci(sig))
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.0.cmp(&other.0) == Some(0)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.cmp(&other.0).map(|c| c.cmp(&0))
    }
}

macro_rules! real_binop {
    ($tr:ident, $method:ident, $op:ident) => {
        impl $tr<&Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                let p = self.bits().max(rhs.bits());
                Real::wrap(self.0.$op(&rhs.0, p, RM))
            }
        }
        impl $tr<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                (&self).$method(rhs)
            }
        }
        impl $tr<Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                self.$method(&rhs)
            }
        }
        impl $tr<i64> for &Real {
            type Output = Real;
            fn $method(self, rhs: i64) -> Real {
                self.$method(&Real::from_i64(rhs, self.bits()))
            }
        }
        impl $tr<i64> for Real {
            type Output = Real;
            fn $method(self, rhs: i64) -> Real {
                (&self).$method(&Real::from_i64(rhs, self.bits()))
            }
        }
    };
}

real_binop!(Add, add, add);
real_binop!(Sub, sub, sub);
real_binop!(Mul, mul, mul);
real_binop!(Div, div, div);

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(BigFloat::neg(&self.0))
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(BigFloat::neg(&self.0))
    }
}

/// `sin(pi * y)` with the integer part of `y` removed exactly first, so the
/// result is exactly zero at integers and accurate near them.
pub fn sin_pi(y: &Real) -> Real {
    let n = y.round_int();
    let r = y - &n;
    let s = (&Real::pi(y.bits()) * &r).sin();
    let odd = n.to_biguint().bit(0);
    if odd {
        -s
    } else {
        s
    }
}

/// `cos(pi * y)` with the same exact argument reduction as [`sin_pi`].
pub fn cos_pi(y: &Real) -> Real {
    let n = y.round_int();
    let r = y - &n;
    let c = (&Real::pi(y.bits()) * &r).cos();
    if n.to_biguint().bit(0) {
        -c
    } else {
        c
    }
}
