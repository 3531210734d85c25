//! Exact rationals.
//!
//! [`Rational`] is `num_rational::BigRational`, which keeps every value in
//! lowest terms with a positive denominator, so zero is always `0/1`. This
//! module adds the parsing and formatting used across the crate's I/O.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Binary arithmetic on rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn rat_arith(op: ArithOp, a: &Rational, b: &Rational) -> Result<Rational> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => {
            if b.is_zero() {
                return Err(Error::DivisionByZero);
            }
            a / b
        }
    })
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"n"`, `"n/d"` or a finite decimal such as `"-1.25e-3"` into the
/// exact rational it denotes.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let err = || Error::Parse(s.to_string());
    if t.is_empty() {
        return Err(err());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(Rational::new(n, d));
    }
    if is_decimal(t) {
        return parse_decimal(t).ok_or_else(err);
    }
    t.parse::<BigInt>()
        .map(Rational::from_integer)
        .map_err(|_| err())
}

/// True when `s` is written with a decimal point or an exponent.
pub fn is_decimal(s: &str) -> bool {
    s.contains(['.', 'e', 'E'])
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (whole, fractional) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && fractional.is_empty() {
        return None;
    }
    if !whole.bytes().chain(fractional.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let all = format!("{whole}{fractional}");
    let mut value = Rational::from_integer(all.parse::<BigInt>().unwrap_or_default());
    let scale = exp - fractional.len() as i64;
    let ten = Rational::from_integer(BigInt::from(10));
    let pow = num_traits::pow(ten, scale.unsigned_abs() as usize);
    if scale >= 0 {
        value *= pow;
    } else {
        value /= pow;
    }
    Some(if neg { -value } else { value })
}

/// The exact dyadic rational encoded by a finite `f64`.
pub fn from_f64(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or(Error::NonFinite)
}

/// `"n"` for integers, `"n/d"` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Nearest integer, ties rounded up (floor(x + 1/2)).
pub fn round_half_up(q: &Rational) -> BigInt {
    (q + frac(1, 2)).floor().to_integer()
}

pub fn abs(q: &Rational) -> Rational {
    q.abs()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn zero() -> Rational {
    Rational::zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_is_canonical() {
        assert_eq!(rat_arith(ArithOp::Add, &frac(1, 3), &frac(1, 6)).unwrap(), frac(1, 2));
        let z = rat_arith(ArithOp::Mul, &frac(0, 1), &frac(7, 5)).unwrap();
        assert_eq!((z.numer().clone(), z.denom().clone()), (BigInt::from(0), BigInt::from(1)));
        assert_eq!(rat_arith(ArithOp::Div, &frac(3, 4), &frac(3, 4)).unwrap(), one());
        assert_eq!(
            rat_arith(ArithOp::Div, &one(), &zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn parses_all_spellings() {
        assert_eq!(parse_rational("-6/4").unwrap(), frac(-3, 2));
        assert_eq!(parse_rational("12").unwrap(), int(12));
        assert_eq!(parse_rational("0.125").unwrap(), frac(1, 8));
        assert_eq!(parse_rational("-1.5e-1").unwrap(), frac(-3, 20));
        assert_eq!(parse_rational("2E2").unwrap(), int(200));
        assert_eq!(parse_rational(".5").unwrap(), frac(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn formats_integers_without_denominator() {
        assert_eq!(format_rational(&int(-108)), "-108");
        assert_eq!(format_rational(&frac(43, 128)), "43/128");
    }

    #[test]
    fn floats_are_exact_dyadics() {
        assert_eq!(from_f64(0.5).unwrap(), frac(1, 2));
        assert_eq!(from_f64(f64::NAN), Err(Error::NonFinite));
    }
}
