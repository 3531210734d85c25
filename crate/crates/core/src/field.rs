//! The number field `Q(α) = Q[x]/(p(x))` and its elements.
//!
//! An element is the coefficient vector `[q1, .., qm]` of
//! `q1 + q2 α + .. + qm α^(m-1)`. Sums are componentwise, products are
//! polynomial products reduced modulo `p`, and inverses come from the
//! Bézout identity `u q + v p = 1`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::irreducible::{self, Irreducibility, Verdict};
use crate::numeric::{self, HpComplex, Precision};
use crate::poly::RationalPoly;
use crate::rational::{self, ArithOp, Rational};

/// How `α` maps under complex conjugation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConjugationSpec {
    /// `α` is real, conjugation is the identity.
    RealAlpha,
    /// `α = exp(2πi/p)` for an odd prime `p`, so `α* = α^(p-1)`.
    CyclotomicPrime(u32),
    /// `α* = a1 + a2 α + .. + am α^(m-1)`.
    Explicit(Vec<Rational>),
}

/// Construction options for [`NumberField`].
#[derive(Debug, Clone, Default)]
pub struct FieldOptions {
    /// Accept a minimal polynomial whose irreducibility could not be proven.
    pub allow_unverified: bool,
    /// Working precision of the numeric embedding.
    pub precision: Precision,
    /// Starting point for the Newton iteration that locates `α`.
    pub root_hint: Option<Complex64>,
}

pub struct NumberField {
    min_poly: RationalPoly,
    degree: usize,
    conjugation: ConjugationSpec,
    irreducibility: Irreducibility,
    // conj_powers[i] = coefficients of (α*)^i
    conj_powers: Vec<Vec<Rational>>,
    precision: Precision,
    root_hint: Option<Complex64>,
    root: OnceLock<Result<HpComplex>>,
}

impl NumberField {
    /// Validates `min_poly` and `conjugation` with default options.
    pub fn new(min_poly: RationalPoly, conjugation: ConjugationSpec) -> Result<Arc<Self>> {
        Self::with_options(min_poly, conjugation, FieldOptions::default())
    }

    pub fn with_options(
        min_poly: RationalPoly,
        conjugation: ConjugationSpec,
        options: FieldOptions,
    ) -> Result<Arc<Self>> {
        let degree = min_poly.degree().unwrap_or(0);
        if !min_poly.is_monic() {
            return Err(Error::NotMonic);
        }
        if degree < 2 {
            return Err(Error::DegreeTooSmall(degree));
        }
        let alpha_star = conjugate_of_alpha(&min_poly, &conjugation)?;
        let irreducibility = match irreducible::check(&min_poly) {
            Verdict::Irreducible(how) => how,
            Verdict::Reducible(factor) => return Err(Error::Reducible { factor }),
            Verdict::Inconclusive if options.allow_unverified => Irreducibility::Waived,
            Verdict::Inconclusive => return Err(Error::IrreducibilityUnverified),
        };
        let mut conj_powers = Vec::with_capacity(degree);
        let mut power = RationalPoly::one();
        for _ in 0..degree {
            conj_powers.push(padded(&power, degree));
            power = (&power * &alpha_star).rem(&min_poly)?;
        }
        Ok(Arc::new(Self {
            min_poly,
            degree,
            conjugation,
            irreducibility,
            conj_powers,
            precision: options.precision,
            root_hint: options.root_hint,
            root: OnceLock::new(),
        }))
    }

    /// `Q(√2 + √3)`, minimal polynomial `x^4 - 10x^2 + 1`, real `α`.
    pub fn sqrt2_plus_sqrt3() -> Arc<Self> {
        Self::new(RationalPoly::from_ints(&[1, 0, -10, 0, 1]), ConjugationSpec::RealAlpha)
            .expect("x^4 - 10x^2 + 1 is irreducible")
    }

    /// The `p`-th cyclotomic field, `α = exp(2πi/p)`.
    pub fn cyclotomic(p: u32) -> Result<Arc<Self>> {
        let poly = RationalPoly::from_ints(&vec![1; p.max(1) as usize]);
        Self::new(poly, ConjugationSpec::CyclotomicPrime(p))
    }

    /// `Q(i)`, minimal polynomial `x^2 + 1` with `α* = -α`.
    pub fn gaussian() -> Arc<Self> {
        Self::new(
            RationalPoly::from_ints(&[1, 0, 1]),
            ConjugationSpec::Explicit(vec![rational::int(0), rational::int(-1)]),
        )
        .expect("x^2 + 1 is irreducible")
    }

    pub fn min_poly(&self) -> &RationalPoly {
        &self.min_poly
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn conjugation(&self) -> &ConjugationSpec {
        &self.conjugation
    }

    pub fn irreducibility(&self) -> Irreducibility {
        self.irreducibility
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    /// `α*` as an element of the field.
    pub fn alpha_star(self: &Arc<Self>) -> FieldElement {
        let coeffs = if self.degree > 1 {
            self.conj_powers[1].clone()
        } else {
            vec![Rational::one()]
        };
        FieldElement { field: Arc::clone(self), coeffs }
    }

    /// High-precision approximation of `α`, located on first use.
    pub fn numeric_root(&self) -> Result<&HpComplex> {
        self.root
            .get_or_init(|| find_numeric_root(self, self.root_hint))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn same(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.min_poly == other.min_poly && self.conjugation == other.conjugation
    }
}

impl Eq for NumberField {}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NumberField")
            .field("min_poly", &self.min_poly.to_string())
            .field("conjugation", &self.conjugation)
            .field("irreducibility", &self.irreducibility)
            .finish()
    }
}

fn padded(p: &RationalPoly, m: usize) -> Vec<Rational> {
    (0..m).map(|i| p.coeff(i)).collect()
}

fn is_odd_prime(p: u32) -> bool {
    p > 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// `α*` as a reduced polynomial in `α`, after checking that the rule is
/// consistent with `min_poly`.
fn conjugate_of_alpha(min_poly: &RationalPoly, spec: &ConjugationSpec) -> Result<RationalPoly> {
    let m = min_poly.degree().unwrap_or(0);
    match spec {
        ConjugationSpec::RealAlpha => Ok(RationalPoly::x()),
        ConjugationSpec::CyclotomicPrime(p) => {
            if !is_odd_prime(*p) {
                return Err(Error::InvalidConjugation(format!("{p} is not an odd prime")));
            }
            let expected = RationalPoly::from_ints(&vec![1; *p as usize]);
            if *min_poly != expected {
                return Err(Error::InvalidConjugation(format!(
                    "cyclotomic conjugation for p = {p} needs minimal polynomial {expected}"
                )));
            }
            // α* = α^(p-1) = -(1 + α + .. + α^(p-2))
            Ok(-&RationalPoly::from_ints(&vec![1; m]))
        }
        ConjugationSpec::Explicit(a) => {
            if a.len() != m {
                return Err(Error::InvalidConjugation(format!(
                    "alpha_star needs {m} coefficients, got {}",
                    a.len()
                )));
            }
            let star = RationalPoly::new(a.clone());
            if !min_poly.compose(&star).rem(min_poly)?.is_zero() {
                return Err(Error::InvalidConjugation(
                    "alpha_star is not a root of the minimal polynomial".into(),
                ));
            }
            if star.compose(&star).rem(min_poly)? != RationalPoly::x() {
                return Err(Error::InvalidConjugation(
                    "conjugation is not an involution".into(),
                ));
            }
            Ok(star)
        }
    }
}

/// Locates a root of the minimal polynomial that is consistent with the
/// field's conjugation, polished to the field's working precision.
///
/// With a hint, Newton's method starts there. Otherwise cyclotomic fields
/// start from `exp(2πi/p)`, real fields take the largest real root, and
/// explicit conjugations take the first root `z` (upper half plane first)
/// with `α*(z) = conj(z)`.
pub fn find_numeric_root(field: &NumberField, hint: Option<Complex64>) -> Result<HpComplex> {
    let prec = field.precision;
    let bits = prec.bits();
    let p = &field.min_poly;
    let start = match (hint, &field.conjugation) {
        (Some(h), _) => h,
        (None, ConjugationSpec::CyclotomicPrime(q)) => numeric::root_of_unity(1, *q),
        (None, spec) => {
            let mut roots = numeric::approximate_roots(p)?;
            roots.sort_by(|a, b| {
                (b.im > 0.0)
                    .cmp(&(a.im > 0.0))
                    .then(b.re.total_cmp(&a.re))
            });
            let pick = match spec {
                ConjugationSpec::RealAlpha => roots
                    .iter()
                    .filter(|z| z.im.abs() < 1e-7 * (1.0 + z.norm()))
                    .map(|z| Complex64::new(z.re, 0.0))
                    .max_by(|a, b| a.re.total_cmp(&b.re)),
                _ => {
                    let star = field.conj_powers[1].clone();
                    roots.into_iter().find(|z| {
                        let image = star
                            .iter()
                            .rev()
                            .fold(Complex64::zero(), |acc, c| {
                                acc * z + rational_f64(c)
                            });
                        (image - z.conj()).norm() < 1e-6 * (1.0 + z.norm())
                    })
                }
            };
            pick.ok_or_else(|| {
                Error::MissingNumericRoot("no root is consistent with the conjugation".into())
            })?
        }
    };
    let root = numeric::newton_polish(p, &HpComplex::from_c64(start, bits)?, prec)?;
    let consistent = match &field.conjugation {
        ConjugationSpec::RealAlpha => root.is_real(),
        _ => {
            let star = RationalPoly::new(field.conj_powers[1].clone()).eval_complex(&root);
            star.sub(&root.conj()).abs() < 1e-20 * (1.0 + root.abs())
        }
    };
    if consistent {
        Ok(root)
    } else {
        Err(Error::MissingNumericRoot(
            "root reached from the hint is inconsistent with the conjugation".into(),
        ))
    }
}

fn rational_f64(q: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
}

/// An element of `Q(α)`: exactly `m` rational coefficients, ascending
/// powers of `α`.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<NumberField>,
    coeffs: Vec<Rational>,
}

impl FieldElement {
    pub fn new(field: &Arc<NumberField>, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != field.degree {
            return Err(Error::DimensionMismatch { expected: field.degree, actual: coeffs.len() });
        }
        Ok(Self { field: Arc::clone(field), coeffs })
    }

    pub fn from_ints(field: &Arc<NumberField>, coeffs: &[i64]) -> Result<Self> {
        Self::new(field, coeffs.iter().map(|&c| rational::int(c)).collect())
    }

    /// Reduces an arbitrary polynomial in `α` into the field.
    pub fn from_poly(field: &Arc<NumberField>, p: &RationalPoly) -> Self {
        let r = p.rem(&field.min_poly).expect("minimal polynomial is nonzero");
        Self { field: Arc::clone(field), coeffs: padded(&r, field.degree) }
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        Self { field: Arc::clone(field), coeffs: vec![Rational::zero(); field.degree] }
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::from_rational(field, Rational::one())
    }

    pub fn from_rational(field: &Arc<NumberField>, q: Rational) -> Self {
        let mut e = Self::zero(field);
        e.coeffs[0] = q;
        e
    }

    /// The generator `α`.
    pub fn alpha(field: &Arc<NumberField>) -> Self {
        let mut e = Self::zero(field);
        e.coeffs[1] = Rational::one();
        e
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn to_poly(&self) -> RationalPoly {
        RationalPoly::new(self.coeffs.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn same_field(&self, other: &Self) -> bool {
        self.field.same(&other.field)
    }

    fn require_same(&self, other: &Self) -> Result<()> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    /// Field arithmetic; division by zero and mixed fields are errors.
    pub fn arith(&self, op: ArithOp, other: &Self) -> Result<Self> {
        self.require_same(other)?;
        Ok(match op {
            ArithOp::Add => self.zip(other, |a, b| a + b),
            ArithOp::Sub => self.zip(other, |a, b| a - b),
            ArithOp::Mul => self.mul_unchecked(other),
            ArithOp::Div => self.mul_unchecked(&other.inverse()?),
        })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.arith(ArithOp::Add, other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.arith(ArithOp::Sub, other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.arith(ArithOp::Mul, other)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.arith(ArithOp::Div, other)
    }

    fn zip(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect();
        Self { field: Arc::clone(&self.field), coeffs }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        Self::from_poly(&self.field, &(&self.to_poly() * &other.to_poly()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// the minimal polynomial.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, u, _) = RationalPoly::ext_gcd(&self.to_poly(), &self.field.min_poly)?;
        if g.degree() != Some(0) {
            // only reachable when irreducibility was waived
            return Err(Error::Invalid(format!(
                "element shares the factor {g} with the minimal polynomial"
            )));
        }
        // g is monic, so g = 1 and u a ≡ 1 exactly
        Ok(Self::from_poly(&self.field, &u))
    }

    /// `Σ r_i (α*)^(i-1)`.
    pub fn conjugate(&self) -> Self {
        if self.field.conjugation == ConjugationSpec::RealAlpha {
            return self.clone();
        }
        let m = self.field.degree;
        let mut coeffs = vec![Rational::zero(); m];
        for (r, power) in self.coeffs.iter().zip(&self.field.conj_powers) {
            if r.is_zero() {
                continue;
            }
            for (acc, c) in coeffs.iter_mut().zip(power) {
                *acc += r * c;
            }
        }
        Self { field: Arc::clone(&self.field), coeffs }
    }

    /// `⟨self, other⟩ = self · other*`.
    pub fn inner(&self, other: &Self) -> Result<Self> {
        self.require_same(other)?;
        Ok(self.mul_unchecked(&other.conjugate()))
    }

    /// Image under the embedding `α ↦ numeric root`.
    pub fn embed(&self) -> Result<HpComplex> {
        let root = self.field.numeric_root()?;
        Ok(self.to_poly().eval_complex(root))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other) && self.coeffs == other.coeffs
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `[12, 4, -108, -20]`
impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(rational::format_rational).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

// Operator forms panic when the operands come from different fields; the
// `checked_*` methods report that as an error instead.
macro_rules! element_op {
    ($tr:ident, $m:ident, $op:expr) => {
        impl $tr for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: Self) -> FieldElement {
                self.arith($op, rhs).expect("operands from different fields")
            }
        }
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: Self) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
    };
}
element_op!(Add, add, ArithOp::Add);
element_op!(Sub, sub, ArithOp::Sub);
element_op!(Mul, mul, ArithOp::Mul);

impl Neg for &FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        self.scale(&-Rational::one())
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        -&self
    }
}
