//! JSON file formats for fields, vectors, signals and matrices.
//!
//! Coefficients travel as strings (`"12"`, `"-43/128"`) so nothing is lost
//! to floating point; plain JSON numbers are accepted on input. Element
//! coefficient lists are ascending unless [`CoeffOrder::Descending`] is
//! asked for; field files are always ascending.
//!
//! ```
//! use epsarith::io::FieldSpec;
//!
//! let field = FieldSpec::parse(r#"{"min_poly": ["1","0","-10","0","1"],
//!                                  "conjugation": {"kind": "real"}}"#)
//!     .unwrap()
//!     .build()
//!     .unwrap();
//! assert_eq!(field.degree(), 4);
//! ```

use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{ConjugationSpec, FieldElement, FieldOptions, NumberField};
use crate::linalg::FieldMatrix;
use crate::numeric::Precision;
use crate::poly::RationalPoly;
use crate::quantize::{RealComponent, RealVector};
use crate::rational::{self, Rational};
use crate::signal::VectorSignal;

/// A coefficient as written in a file: a string or a bare JSON number.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum Scalar {
    Text(String),
    Number(serde_json::Number),
}

impl Scalar {
    pub fn text(&self) -> String {
        match self {
            Self::Text(s) => s.clone(),
            Self::Number(n) => n.to_string(),
        }
    }

    pub fn to_rational(&self) -> Result<Rational> {
        rational::parse_rational(&self.text())
    }

    pub fn to_real(&self) -> Result<RealComponent> {
        RealComponent::parse(&self.text())
    }
}

impl From<&Rational> for Scalar {
    fn from(q: &Rational) -> Self {
        Self::Text(rational::format_rational(q))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CoeffOrder {
    #[default]
    Ascending,
    /// Highest power of `α` first.
    Descending,
}

impl CoeffOrder {
    fn arrange<T>(self, mut v: Vec<T>) -> Vec<T> {
        if self == Self::Descending {
            v.reverse();
        }
        v
    }
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Format(e.to_string())
}

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConjugationFile {
    Real,
    Cyclotomic { p: u32 },
    Explicit { alpha_star: Vec<Scalar> },
}

/// `{"min_poly": [...], "conjugation": {...}}`
#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
pub struct FieldSpec {
    pub min_poly: Vec<Scalar>,
    pub conjugation: ConjugationFile,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub allow_unverified: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision_digits: Option<u32>,
    /// `[re, im]` starting point for locating `α` numerically.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root_hint: Option<[f64; 2]>,
}

impl FieldSpec {
    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(json_err)
    }

    pub fn build(&self) -> Result<Arc<NumberField>> {
        let coeffs = self.min_poly.iter().map(Scalar::to_rational).collect::<Result<Vec<_>>>()?;
        let conjugation = match &self.conjugation {
            ConjugationFile::Real => ConjugationSpec::RealAlpha,
            ConjugationFile::Cyclotomic { p } => ConjugationSpec::CyclotomicPrime(*p),
            ConjugationFile::Explicit { alpha_star } => ConjugationSpec::Explicit(
                alpha_star.iter().map(Scalar::to_rational).collect::<Result<_>>()?,
            ),
        };
        let options = FieldOptions {
            allow_unverified: self.allow_unverified,
            precision: self.precision_digits.map(Precision::digits).unwrap_or_default(),
            root_hint: self.root_hint.map(|[re, im]| Complex64::new(re, im)),
        };
        NumberField::with_options(RationalPoly::new(coeffs), conjugation, options)
    }

    pub fn from_field(field: &NumberField) -> Self {
        let m = field.degree();
        let min_poly = (0..=m).map(|i| Scalar::from(&field.min_poly().coeff(i))).collect();
        let conjugation = match field.conjugation() {
            ConjugationSpec::RealAlpha => ConjugationFile::Real,
            ConjugationSpec::CyclotomicPrime(p) => ConjugationFile::Cyclotomic { p: *p },
            ConjugationSpec::Explicit(a) => ConjugationFile::Explicit {
                alpha_star: a.iter().map(Scalar::from).collect(),
            },
        };
        Self { min_poly, conjugation, allow_unverified: false, precision_digits: None, root_hint: None }
    }
}

pub fn element_from_scalars(
    field: &Arc<NumberField>,
    values: &[Scalar],
    order: CoeffOrder,
) -> Result<FieldElement> {
    let coeffs = values.iter().map(Scalar::to_rational).collect::<Result<Vec<_>>>()?;
    FieldElement::new(field, order.arrange(coeffs))
}

pub fn element_to_scalars(e: &FieldElement, order: CoeffOrder) -> Vec<Scalar> {
    order.arrange(e.coeffs().iter().map(Scalar::from).collect())
}

/// A JSON array of numbers or strings, e.g. `[1, "2/3", 0.25]`, or the
/// table form `[12, -1/2]` with bare fractions.
pub fn parse_scalars(json: &str) -> Result<Vec<Scalar>> {
    serde_json::from_str(json).or_else(|e| {
        let body = json
            .trim()
            .strip_prefix('[')
            .and_then(|rest| rest.strip_suffix(']'))
            .ok_or_else(|| json_err(e))?;
        if body.trim().is_empty() {
            return Ok(Vec::new());
        }
        body.split(',')
            .map(|tok| {
                let tok = tok.trim().trim_matches('"');
                rational::parse_rational(tok).map(|_| Scalar::Text(tok.to_owned()))
            })
            .collect()
    })
}

pub fn parse_real_vector(json: &str, order: CoeffOrder) -> Result<RealVector> {
    let comps = parse_scalars(json)?.iter().map(Scalar::to_real).collect::<Result<Vec<_>>>()?;
    Ok(RealVector(order.arrange(comps)))
}

/// `[12, 4, -108, -20]`
pub fn format_table(coeffs: &[Rational], order: CoeffOrder) -> String {
    let parts: Vec<String> = order.arrange(coeffs.iter().map(rational::format_rational).collect());
    format!("[{}]", parts.join(", "))
}

/// `["12","4","-108","-20"]`
pub fn format_json(coeffs: &[Rational], order: CoeffOrder) -> String {
    let parts: Vec<String> = order.arrange(coeffs.iter().map(rational::format_rational).collect());
    serde_json::to_string(&parts).expect("strings serialize")
}

/// `{"start": 0, "elements": [["1","0"], ...]}`
#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
pub struct SignalFile {
    #[serde(default)]
    pub start: i64,
    pub elements: Vec<Vec<Scalar>>,
}

impl SignalFile {
    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(json_err)
    }

    pub fn to_signal(&self, field: &Arc<NumberField>, order: CoeffOrder) -> Result<VectorSignal> {
        let elements = self
            .elements
            .iter()
            .map(|e| element_from_scalars(field, e, order))
            .collect::<Result<_>>()?;
        VectorSignal::new(self.start, elements)
    }

    pub fn from_signal(s: &VectorSignal, order: CoeffOrder) -> Self {
        Self {
            start: s.start(),
            elements: s.elements().iter().map(|e| element_to_scalars(e, order)).collect(),
        }
    }
}

/// `{"rows": L, "cols": J, "entries": [[elem, ...], ...]}`
#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Vec<Scalar>>>,
}

impl MatrixFile {
    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(json_err)
    }

    pub fn to_matrix(&self, field: &Arc<NumberField>, order: CoeffOrder) -> Result<FieldMatrix> {
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(Error::Shape(format!(
                "entries do not form a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .flatten()
            .map(|e| element_from_scalars(field, e, order))
            .collect::<Result<_>>()?;
        FieldMatrix::new(self.rows, self.cols, entries)
    }

    pub fn from_matrix(m: &FieldMatrix, order: CoeffOrder) -> Self {
        let entries = (0..m.rows())
            .map(|r| m.row(r).iter().map(|e| element_to_scalars(e, order)).collect())
            .collect();
        Self { rows: m.rows(), cols: m.cols(), entries }
    }
}
