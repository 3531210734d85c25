//! Exact arithmetic on rational vectors viewed as elements of an algebraic
//! number field `Q(α) = Q[x]/(p(x))`.
//!
//! A vector `[r1, ..., rm]` stands for `r1 + r2·α + ... + rm·α^(m-1)`.
//! [`NumberField`] validates `p` and a conjugation rule; [`FieldElement`]
//! gives exact field arithmetic, inverses, conjugates and inner products.
//! [`quantize`] turns real vectors into nearby rational ones, [`signal`]
//! and [`linalg`] build signals and linear systems over the field.
//!
//! ```
//! use epsarith::{FieldElement, NumberField};
//!
//! let f = NumberField::cyclotomic(5).unwrap();
//! let a = FieldElement::from_ints(&f, &[1, 1, 1, 1]).unwrap();
//! let b = FieldElement::from_ints(&f, &[1, 1, -1, -1]).unwrap();
//! assert_eq!((&a * &b).to_string(), "[0, 2, 2, 1]");
//! ```

pub mod error;
pub mod field;
pub mod io;
pub mod irreducible;
pub mod linalg;
pub mod numeric;
pub mod poly;
pub mod quantize;
pub mod rational;
pub mod signal;

pub use error::{Error, Result};
pub use field::{ConjugationSpec, FieldElement, FieldOptions, NumberField};
pub use numeric::{HpComplex, Precision};
pub use poly::RationalPoly;
pub use rational::{ArithOp, Rational};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/fields.md")]
    mod fields {}
    #[doc = include_str!("../../../book/src/arithmetic.md")]
    mod arithmetic {}
    #[doc = include_str!("../../../book/src/inner-products.md")]
    mod inner_products {}
    #[doc = include_str!("../../../book/src/quantization.md")]
    mod quantization {}
    #[doc = include_str!("../../../book/src/signals.md")]
    mod signals {}
    #[doc = include_str!("../../../book/src/linear-systems.md")]
    mod linear_systems {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
