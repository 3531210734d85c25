//! ε-quantization: rational vectors within ε of real vectors, and
//! ε-arithmetic built on top of it.
//!
//! Each real component is first taken as the exact rational it denotes (a
//! binary float is the dyadic rational it encodes; a decimal string is its
//! decimal value) and then replaced by a nearby rational with a small
//! denominator. Components that were handed over as exact rationals pass
//! through untouched.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldElement, NumberField};
use crate::rational::{self, ArithOp, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Norm {
    L2,
    #[default]
    Linf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Round every component to the coarsest grid `2^-k Z` fine enough.
    #[default]
    Dyadic,
    /// Smallest-denominator rational within the per-component tolerance.
    ContinuedFraction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsilonConfig {
    epsilon: Rational,
    pub norm: Norm,
    pub strategy: Strategy,
}

impl EpsilonConfig {
    pub const DEFAULT_EPSILON: f64 = 1e-9;

    pub fn new(epsilon: f64, norm: Norm, strategy: Strategy) -> Result<Self> {
        Self::exact(rational::from_f64(epsilon)?, norm, strategy)
    }

    pub fn exact(epsilon: Rational, norm: Norm, strategy: Strategy) -> Result<Self> {
        if !epsilon.is_positive() {
            return Err(Error::NonPositiveEpsilon);
        }
        Ok(Self { epsilon, norm, strategy })
    }

    pub fn epsilon(&self) -> &Rational {
        &self.epsilon
    }
}

impl Default for EpsilonConfig {
    fn default() -> Self {
        Self::new(Self::DEFAULT_EPSILON, Norm::default(), Strategy::default()).unwrap()
    }
}

/// One component of a real vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RealComponent {
    /// Known to be this rational; never altered by quantization.
    Exact(Rational),
    /// A real value, carried as the exact rational it was written as.
    Approx(Rational),
}

impl RealComponent {
    pub fn value(&self) -> &Rational {
        match self {
            Self::Exact(q) | Self::Approx(q) => q,
        }
    }

    /// `"n"` and `"n/d"` are exact; anything with a decimal point or
    /// exponent is a real value to be quantized.
    pub fn parse(s: &str) -> Result<Self> {
        let q = rational::parse_rational(s)?;
        Ok(if rational::is_decimal(s) { Self::Approx(q) } else { Self::Exact(q) })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealVector(pub Vec<RealComponent>);

impl RealVector {
    pub fn from_f64s(xs: &[f64]) -> Result<Self> {
        xs.iter()
            .map(|&x| rational::from_f64(x).map(RealComponent::Approx))
            .collect::<Result<_>>()
            .map(Self)
    }

    pub fn exact(qs: Vec<Rational>) -> Self {
        Self(qs.into_iter().map(RealComponent::Exact).collect())
    }

    pub fn parse<S: AsRef<str>>(parts: &[S]) -> Result<Self> {
        parts.iter().map(|s| RealComponent::parse(s.as_ref())).collect::<Result<_>>().map(Self)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> impl Iterator<Item = &Rational> {
        self.0.iter().map(RealComponent::value)
    }
}

/// Exact `‖v‖^2` for L2, `‖v‖` for Linf; compare against `ε^2` or `ε`.
pub fn norm_measure<'a>(norm: Norm, v: impl Iterator<Item = &'a Rational>) -> Rational {
    match norm {
        Norm::L2 => v.fold(Rational::zero(), |acc, x| acc + x * x),
        Norm::Linf => v.fold(Rational::zero(), |acc, x| acc.max(x.abs())),
    }
}

/// True when `‖v‖ < ε` in the configured norm, decided exactly.
pub fn within<'a>(cfg: &EpsilonConfig, v: impl Iterator<Item = &'a Rational>) -> bool {
    let measure = norm_measure(cfg.norm, v);
    match cfg.norm {
        Norm::L2 => measure < &cfg.epsilon * &cfg.epsilon,
        Norm::Linf => measure < cfg.epsilon,
    }
}

/// True when `r` has no exact nonzero component and lies within ε of zero;
/// such a vector counts as zero for division.
pub fn in_zero_range(r: &RealVector, cfg: &EpsilonConfig) -> bool {
    let no_exact_mass = r.0.iter().all(|c| match c {
        RealComponent::Exact(q) => q.is_zero(),
        RealComponent::Approx(_) => true,
    });
    no_exact_mass && within(cfg, r.values())
}

/// A rational vector `q` with `‖r - q‖ < ε`.
pub fn quantize(r: &RealVector, cfg: &EpsilonConfig) -> Vec<Rational> {
    let m = r.len().max(1);
    let round: Box<dyn Fn(&Rational) -> Rational> = match cfg.strategy {
        Strategy::Dyadic => {
            let k = dyadic_exponent(cfg, m);
            let scale = Rational::from_integer(BigInt::one() << k);
            Box::new(move |x| Rational::from_integer(rational::round_half_up(&(x * &scale))) / &scale)
        }
        Strategy::ContinuedFraction => {
            let delta = component_tolerance(cfg, m);
            Box::new(move |x| simplest_between(&(x - &delta), &(x + &delta)))
        }
    };
    r.0.iter()
        .map(|c| match c {
            RealComponent::Exact(q) => q.clone(),
            RealComponent::Approx(x) => round(x),
        })
        .collect()
}

/// Smallest `k ≥ 0` with `2^-k < ε` (Linf) or `2^-k < ε / √m` (L2).
fn dyadic_exponent(cfg: &EpsilonConfig, m: usize) -> usize {
    let eps = &cfg.epsilon;
    let m = rational::int(m as i64);
    let mut k = 0usize;
    loop {
        let step = Rational::new(BigInt::one(), BigInt::one() << k);
        let fine = match cfg.norm {
            Norm::Linf => &step < eps,
            Norm::L2 => &step * &step * &m < eps * eps,
        };
        if fine {
            return k;
        }
        k += 1;
    }
}

/// Per-component tolerance `δ` with `δ ≤ ε` (Linf) or `δ ≤ ε / √m` (L2).
fn component_tolerance(cfg: &EpsilonConfig, m: usize) -> Rational {
    match cfg.norm {
        Norm::Linf => cfg.epsilon.clone(),
        Norm::L2 => {
            // s = floor(2^64 / √m) / 2^64 ≤ 1/√m
            let s = ((BigInt::one() << 128u32) / BigInt::from(m)).sqrt();
            &cfg.epsilon * Rational::new(s, BigInt::one() << 64u32)
        }
    }
}

/// The rational with the smallest denominator (then smallest magnitude)
/// strictly between `lo` and `hi`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo < hi, "empty interval");
    if lo.is_negative() && hi.is_positive() {
        Rational::zero()
    } else if !lo.is_negative() {
        simplest_above(lo.clone(), Some(hi.clone()))
    } else {
        -simplest_above(-hi, Some(-lo))
    }
}

// Simplest rational in the open interval (lo, hi) with lo ≥ 0; `None` is +∞.
fn simplest_above(lo: Rational, hi: Option<Rational>) -> Rational {
    let floor = lo.floor();
    let next = &floor + Rational::one();
    if hi.as_ref().is_none_or(|h| &next < h) {
        return next;
    }
    let hi = hi.unwrap();
    // lo, hi in [floor, floor + 1]: recurse on the reciprocal interval
    let new_lo = (&hi - &floor).recip();
    let new_hi = if lo == floor { None } else { Some((&lo - &floor).recip()) };
    floor + simplest_above(new_lo, new_hi).recip()
}

/// Quantizes `r` and lifts it into `field`.
pub fn lift(r: &RealVector, field: &Arc<NumberField>, cfg: &EpsilonConfig) -> Result<FieldElement> {
    FieldElement::new(field, quantize(r, cfg))
}

/// ε-arithmetic: quantize both operands, then apply the field operation.
/// Dividing by a vector in the ε-range of zero is a division by zero.
pub fn eps_arith(
    op: ArithOp,
    r1: &RealVector,
    r2: &RealVector,
    field: &Arc<NumberField>,
    cfg: &EpsilonConfig,
) -> Result<FieldElement> {
    if op == ArithOp::Div && in_zero_range(r2, cfg) {
        return Err(Error::DivisionByZero);
    }
    lift(r1, field, cfg)?.arith(op, &lift(r2, field, cfg)?)
}
