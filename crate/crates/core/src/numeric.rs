//! High-precision complex numbers and root finding for the numeric
//! embedding `Q(α) → C`.
//!
//! Values are fixed point: a pair of big-integer mantissas scaled by
//! `2^-bits`. Absolute precision is all the embedding checks need, and it
//! keeps every operation a handful of big-integer multiplications.

use std::f64::consts::PI;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::RationalPoly;
use crate::rational::Rational;

/// Working precision in decimal digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Precision {
    pub digits: u32,
}

impl Precision {
    pub const DEFAULT_DIGITS: u32 = 64;

    pub fn digits(digits: u32) -> Self {
        Self { digits }
    }

    /// Mantissa bits, including 32 guard bits.
    pub fn bits(self) -> u32 {
        (f64::from(self.digits) * std::f64::consts::LOG2_10).ceil() as u32 + 32
    }

    /// Residual bound a polished root must satisfy: `10^-(digits - 8)`.
    pub fn root_tolerance(self) -> f64 {
        10f64.powi(-(self.digits as i32 - 8))
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self::digits(Self::DEFAULT_DIGITS)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct HpComplex {
    re: BigInt,
    im: BigInt,
    bits: u32,
}

fn shift_round(x: BigInt, bits: u32) -> BigInt {
    // floor((x + 2^(bits-1)) / 2^bits)
    if bits == 0 {
        return x;
    }
    (x + (BigInt::from(1) << (bits - 1))) >> bits
}

fn scaled(q: &Rational, bits: u32) -> BigInt {
    let num = q.numer() << bits;
    let (d, m) = num.div_mod_floor(q.denom());
    // round half up
    if (m << 1u32) >= *q.denom() {
        d + 1
    } else {
        d
    }
}

impl HpComplex {
    pub fn zero(bits: u32) -> Self {
        Self { re: BigInt::zero(), im: BigInt::zero(), bits }
    }

    pub fn from_rational(q: &Rational, bits: u32) -> Self {
        Self { re: scaled(q, bits), im: BigInt::zero(), bits }
    }

    pub fn from_rationals(re: &Rational, im: &Rational, bits: u32) -> Self {
        Self { re: scaled(re, bits), im: scaled(im, bits), bits }
    }

    pub fn from_c64(z: Complex64, bits: u32) -> Result<Self> {
        let re = Rational::from_float(z.re).ok_or(Error::NonFinite)?;
        let im = Rational::from_float(z.im).ok_or(Error::NonFinite)?;
        Ok(Self::from_rationals(&re, &im, bits))
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.bits, other.bits, "mixed working precisions");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        Self { re: &self.re + &other.re, im: &self.im + &other.im, bits: self.bits }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        Self { re: &self.re - &other.re, im: &self.im - &other.im, bits: self.bits }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let re = &self.re * &other.re - &self.im * &other.im;
        let im = &self.re * &other.im + &self.im * &other.re;
        Self { re: shift_round(re, self.bits), im: shift_round(im, self.bits), bits: self.bits }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check(other);
        let den = &other.re * &other.re + &other.im * &other.im;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let re = (&self.re * &other.re + &self.im * &other.im) << self.bits;
        let im = (&self.im * &other.re - &self.re * &other.im) << self.bits;
        Ok(Self { re: re / &den, im: im / &den, bits: self.bits })
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -&self.im, bits: self.bits }
    }

    pub fn re(&self) -> Rational {
        Rational::new(self.re.clone(), BigInt::from(1) << self.bits)
    }

    pub fn im(&self) -> Rational {
        Rational::new(self.im.clone(), BigInt::from(1) << self.bits)
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re().to_f64().unwrap_or(f64::NAN),
            self.im().to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Modulus, rounded to `f64`. Tiny moduli stay accurate because the
    /// conversion goes through the exact rational value.
    pub fn abs(&self) -> f64 {
        self.to_c64().norm()
    }

    /// Decimal rendering of the real and imaginary parts with `digits`
    /// fractional digits.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let re = format_decimal(&self.re(), digits);
        let im = format_decimal(&self.im(), digits);
        if self.im.is_negative() {
            format!("{re} - {}i", im.trim_start_matches('-'))
        } else {
            format!("{re} + {im}i")
        }
    }
}

/// `q` rounded to `digits` fractional decimal digits.
pub fn format_decimal(q: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let v = (q * Rational::from_integer(scale.clone())).round().to_integer();
    let neg = v.is_negative();
    let s = v.abs().to_string();
    let s = format!("{s:0>width$}", width = digits + 1);
    let (int, frac) = s.split_at(s.len() - digits);
    format!("{}{int}.{frac}", if neg { "-" } else { "" })
}

impl fmt::Debug for HpComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string(20))
    }
}

impl fmt::Display for HpComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string(f.precision().unwrap_or(20)))
    }
}

const NEWTON_CAP: usize = 400;

/// Polishes `start` to a root of `p` by Newton's method at `prec`.
pub fn newton_polish(p: &RationalPoly, start: &HpComplex, prec: Precision) -> Result<HpComplex> {
    let dp = p.derivative();
    let step_floor = 2f64.powi(-(prec.bits() as i32 - 40));
    let mut z = start.clone();
    for _ in 0..NEWTON_CAP {
        let fz = p.eval_complex(&z);
        let dfz = dp.eval_complex(&z);
        let step = match fz.div(&dfz) {
            Ok(s) => s,
            Err(_) => return Err(Error::NoConvergence(NEWTON_CAP)),
        };
        z = z.sub(&step);
        if step.abs() <= step_floor * (1.0 + z.abs()) {
            break;
        }
    }
    let residual = p.eval_complex(&z).abs();
    if residual < prec.root_tolerance() * scale_of(p, &z) {
        Ok(z)
    } else {
        Err(Error::NoConvergence(NEWTON_CAP))
    }
}

// Residual scale: sum of |c_i| |z|^i, so the tolerance is relative to the
// size of the terms being cancelled.
fn scale_of(p: &RationalPoly, z: &HpComplex) -> f64 {
    let r = z.abs();
    p.coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| c.abs().to_f64().unwrap_or(f64::MAX) * r.powi(i as i32))
        .sum::<f64>()
        .max(1.0)
}

/// All roots of `p` to double precision by Durand–Kerner iteration.
pub fn approximate_roots(p: &RationalPoly) -> Result<Vec<Complex64>> {
    let n = p.degree().unwrap_or(0);
    if n == 0 {
        return Ok(Vec::new());
    }
    let monic = p.monic();
    let c: Vec<f64> = monic
        .coeffs()
        .iter()
        .map(|q| q.to_f64().unwrap_or(f64::NAN))
        .collect();
    if c.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    let eval = |z: Complex64| c.iter().rev().fold(Complex64::zero(), |acc, &a| acc * z + a);
    let radius = 1.0 + c[..n].iter().fold(0f64, |m, v| m.max(v.abs()));
    let mut roots: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..2000 {
        let mut delta = 0f64;
        for i in 0..n {
            let zi = roots[i];
            let den = roots
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(Complex64::new(1.0, 0.0), |acc, (_, &zj)| acc * (zi - zj));
            if den.norm() == 0.0 {
                roots[i] += Complex64::new(1e-8, 1e-8);
                delta = f64::INFINITY;
                continue;
            }
            let step = eval(zi) / den;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-14 * radius {
            return Ok(roots);
        }
    }
    Err(Error::NoConvergence(2000))
}

/// `exp(2πi k / n)` in double precision.
pub fn root_of_unity(k: u32, n: u32) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * f64::from(k) / f64::from(n))
}
