//! Finite-length vector-valued signals over `Q(α)`.
//!
//! A signal is a run of field elements starting at an integer index; it is
//! zero everywhere outside that run.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldElement, NumberField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorSignal {
    start: i64,
    elements: Vec<FieldElement>,
}

impl VectorSignal {
    /// Fails on an empty run or on elements from different fields.
    pub fn new(start: i64, elements: Vec<FieldElement>) -> Result<Self> {
        let first = elements.first().ok_or_else(|| Error::Invalid("empty signal".into()))?;
        if elements.iter().any(|e| !e.same_field(first)) {
            return Err(Error::FieldMismatch);
        }
        Ok(Self { start, elements })
    }

    pub fn zero(field: &Arc<NumberField>, start: i64, len: usize) -> Self {
        Self { start, elements: vec![FieldElement::zero(field); len.max(1)] }
    }

    /// `1` at index 0.
    pub fn unit_impulse(field: &Arc<NumberField>) -> Self {
        Self { start: 0, elements: vec![FieldElement::one(field)] }
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// One past the last supported index.
    pub fn end(&self) -> i64 {
        self.start + self.elements.len() as i64
    }

    pub fn elements(&self) -> &[FieldElement] {
        &self.elements
    }

    pub fn field(&self) -> &Arc<NumberField> {
        self.elements[0].field()
    }

    /// Value at index `n`, zero outside the support.
    pub fn at(&self, n: i64) -> FieldElement {
        if n < self.start || n >= self.end() {
            FieldElement::zero(self.field())
        } else {
            self.elements[(n - self.start) as usize].clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.elements.iter().all(FieldElement::is_zero)
    }

    fn require_same(&self, other: &Self) -> Result<()> {
        if self.elements[0].same_field(&other.elements[0]) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    /// Multiplies every sample by `c`.
    pub fn scale(&self, c: &FieldElement) -> Result<Self> {
        let elements = self
            .elements
            .iter()
            .map(|e| c.checked_mul(e))
            .collect::<Result<_>>()?;
        Ok(Self { start: self.start, elements })
    }

    /// Sum over the union of both supports.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a - b)
    }

    fn combine(&self, other: &Self, f: impl Fn(FieldElement, FieldElement) -> FieldElement) -> Result<Self> {
        self.require_same(other)?;
        let start = self.start.min(other.start);
        let end = self.end().max(other.end());
        let elements = (start..end).map(|n| f(self.at(n), other.at(n))).collect();
        Ok(Self { start, elements })
    }

    /// `Σ_n s1(n) · s2(n)*`, summed over the overlap of the supports.
    pub fn inner(&self, other: &Self) -> Result<FieldElement> {
        self.require_same(other)?;
        let lo = self.start.max(other.start);
        let hi = self.end().min(other.end());
        let mut acc = FieldElement::zero(self.field());
        for n in lo..hi {
            acc = &acc + &self.at(n).inner(&other.at(n))?;
        }
        Ok(acc)
    }

    /// `(s1 * s2)(n) = Σ_k s1(k) · s2(n - k)*`.
    ///
    /// The output covers indices `s1.start + s2.start` onwards and has
    /// length `L1 + L2 - 1`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.require_same(other)?;
        let field = self.field();
        let conj: Vec<FieldElement> = other.elements.iter().map(FieldElement::conjugate).collect();
        let (l1, l2) = (self.len(), other.len());
        let mut out = vec![FieldElement::zero(field); l1 + l2 - 1];
        for (i, a) in self.elements.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in conj.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Ok(Self { start: self.start + other.start, elements: out })
    }

    /// Filters `input` through the impulse response `self`.
    pub fn filter(&self, input: &Self) -> Result<Self> {
        self.convolve(input)
    }
}

/// Classical Gram–Schmidt under [`VectorSignal::inner`].
///
/// An input that lies in the span of its predecessors comes out as the
/// zero signal in its slot. All inputs must share field, start and length.
pub fn gram_schmidt(signals: &[VectorSignal]) -> Result<Vec<VectorSignal>> {
    let Some(first) = signals.first() else {
        return Ok(Vec::new());
    };
    for s in signals {
        first.require_same(s)?;
        if s.start != first.start || s.len() != first.len() {
            return Err(Error::Shape("Gram-Schmidt inputs must share start and length".into()));
        }
    }
    // (v_j, ⟨v_j, v_j⟩^-1) for the nonzero outputs so far
    let mut basis: Vec<(VectorSignal, FieldElement)> = Vec::new();
    let mut out = Vec::with_capacity(signals.len());
    for u in signals {
        let mut v = u.clone();
        for (vj, norm_inv) in &basis {
            let coeff = &u.inner(vj)? * norm_inv;
            if !coeff.is_zero() {
                v = v.sub(&vj.scale(&coeff)?)?;
            }
        }
        if !v.is_zero() {
            let norm = v.inner(&v)?;
            if norm.is_zero() {
                return Err(Error::DegenerateInnerProduct);
            }
            basis.push((v.clone(), norm.inverse()?));
        }
        out.push(v);
    }
    Ok(out)
}
