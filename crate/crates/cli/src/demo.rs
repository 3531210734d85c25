//! Worked examples reproduced as a pass/fail report.

use std::sync::Arc;

use epsarith::quantize::{self, EpsilonConfig, RealVector};
use epsarith::{ArithOp, FieldElement, NumberField, Result};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Case {
    pub name: &'static str,
    pub field: String,
    pub input: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub cases: Vec<Case>,
    pub passed: usize,
    pub total: usize,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.passed == self.total
    }

    pub fn to_table(&self) -> String {
        let mut s = String::from("epsarith demo: worked examples\n\n");
        for c in &self.cases {
            let tag = if c.pass { "PASS" } else { "FAIL" };
            s += &format!("[{tag}] {}\n", c.name);
            s += &format!("       field:    {}\n", c.field);
            s += &format!("       input:    {}\n", c.input);
            s += &format!("       expected: {}\n", c.expected);
            s += &format!("       actual:   {}\n", c.actual);
        }
        s += &format!("\n{}/{} passed\n", self.passed, self.total);
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }
}

fn describe(field: &NumberField) -> String {
    use epsarith::ConjugationSpec::*;
    let conj = match field.conjugation() {
        RealAlpha => "real alpha".to_string(),
        CyclotomicPrime(p) => format!("alpha = exp(2 pi i/{p})"),
        Explicit(a) => format!("alpha* = {}", epsarith::io::format_table(a, Default::default())),
    };
    format!("{} ({conj})", field.min_poly())
}

fn el(field: &Arc<NumberField>, c: &[i64]) -> Result<FieldElement> {
    FieldElement::from_ints(field, c)
}

struct Builder {
    cases: Vec<Case>,
}

impl Builder {
    fn case(
        &mut self,
        name: &'static str,
        field: &str,
        input: impl Into<String>,
        expected: &str,
        actual: Result<String>,
    ) {
        let actual = actual.unwrap_or_else(|e| format!("error: {e}"));
        self.cases.push(Case {
            name,
            field: field.to_string(),
            input: input.into(),
            pass: actual == expected,
            expected: expected.to_string(),
            actual,
        });
    }
}

/// Runs every worked example. `sqrt23` is the field used for the
/// `Q(√2 + √3)` cases; pass a different one to see them fail.
pub fn run(sqrt23: &Arc<NumberField>) -> Report {
    let mut b = Builder { cases: Vec::new() };
    let f1 = sqrt23;
    let d1 = describe(f1);
    let cyc5 = NumberField::cyclotomic(5);
    let cyc3 = NumberField::cyclotomic(3);
    let d5 = cyc5.as_ref().map(|f| describe(f)).unwrap_or_default();
    let d3 = cyc3.as_ref().map(|f| describe(f)).unwrap_or_default();

    b.case(
        "field with alpha = sqrt2 + sqrt3",
        &d1,
        "validate x^4 - 10x^2 + 1",
        "degree 4, x^4 - 10x^2 + 1",
        Ok(format!("degree {}, {}", f1.degree(), f1.min_poly())),
    );
    b.case(
        "numeric value of alpha = sqrt2 + sqrt3",
        &d1,
        "embed [0, 1, 0, 0]",
        "3.1462643699",
        el(f1, &[0, 1, 0, 0]).and_then(|a| a.embed()).map(|z| {
            if z.is_real() {
                epsarith::numeric::format_decimal(&z.re(), 10)
            } else {
                z.to_decimal_string(10)
            }
        }),
    );
    b.case(
        "minimal polynomial vanishes at alpha",
        &d1,
        "x^4 - 10x^2 + 1 at alpha",
        "0 (|p(alpha)| < 1e-50)",
        f1.numeric_root().map(|z| {
            let v = epsarith::RationalPoly::from_ints(&[1, 0, -10, 0, 1]).eval_complex(z);
            if v.abs() < 1e-50 {
                "0 (|p(alpha)| < 1e-50)".to_string()
            } else {
                format!("{:e}", v.abs())
            }
        }),
    );
    b.case(
        "product in Q(sqrt2 + sqrt3)",
        &d1,
        "[1, 1, 1, 1] * [1, 1, -1, -1]",
        "[12, 4, -108, -20]",
        (|| Ok((el(f1, &[1, 1, 1, 1])? * el(f1, &[1, 1, -1, -1])?).to_string()))(),
    );
    b.case(
        "field with alpha = exp(2 pi i/5)",
        &d5,
        "validate x^4 + x^3 + x^2 + x + 1",
        "degree 4, x^4 + x^3 + x^2 + x + 1",
        cyc5.clone().map(|f| format!("degree {}, {}", f.degree(), f.min_poly())),
    );
    b.case(
        "product in the 5th cyclotomic field",
        &d5,
        "[1, 1, 1, 1] * [1, 1, -1, -1]",
        "[0, 2, 2, 1]",
        cyc5.clone()
            .and_then(|f| Ok((el(&f, &[1, 1, 1, 1])? * el(&f, &[1, 1, -1, -1])?).to_string())),
    );
    b.case(
        "conjugate in the 3rd cyclotomic field, [r1, r2]* = [r1 - r2, -r2]",
        &d3,
        "[5, 2]*",
        "[3, -2]",
        cyc3.clone().and_then(|f| Ok(el(&f, &[5, 2])?.conjugate().to_string())),
    );
    b.case(
        "squared norm of alpha in Q(sqrt2 + sqrt3)",
        &d1,
        "<[0, 1, 0, 0], [0, 1, 0, 0]>",
        "[0, 0, 1, 0]",
        el(f1, &[0, 1, 0, 0]).and_then(|a| a.inner(&a)).map(|v| v.to_string()),
    );
    // [r1^2 - r3^2 - 10 r4^2 - 2 r2 r4, 2 r1 r2 - 2 r3 r4,
    //  r2^2 + 10 r3^2 + 99 r4^2 + 2 r1 r3 + 20 r2 r4, 2 r1 r4 + 2 r2 r3 + 20 r3 r4]
    let (r1, r2, r3, r4) = (1i64, 2, 3, 4);
    let closed = format!(
        "[{}, {}, {}, {}]",
        r1 * r1 - r3 * r3 - 10 * r4 * r4 - 2 * r2 * r4,
        2 * r1 * r2 - 2 * r3 * r4,
        r2 * r2 + 10 * r3 * r3 + 99 * r4 * r4 + 2 * r1 * r3 + 20 * r2 * r4,
        2 * r1 * r4 + 2 * r2 * r3 + 20 * r3 * r4
    );
    b.case(
        "squared norm closed form in Q(sqrt2 + sqrt3)",
        &d1,
        "<[1, 2, 3, 4], [1, 2, 3, 4]>",
        &closed,
        el(f1, &[r1, r2, r3, r4]).and_then(|a| a.inner(&a)).map(|v| v.to_string()),
    );
    b.case(
        "epsilon-product of real vectors in Q(sqrt2 + sqrt3)",
        &d1,
        "[1.0, 1.0, 1.0, 1.0] * [1.0, 1.0, -1.0, -1.0], epsilon = 1e-9",
        "[12, 4, -108, -20]",
        (|| {
            let cfg = EpsilonConfig::default();
            let r1 = RealVector::from_f64s(&[1.0, 1.0, 1.0, 1.0])?;
            let r2 = RealVector::from_f64s(&[1.0, 1.0, -1.0, -1.0])?;
            Ok(quantize::eps_arith(ArithOp::Mul, &r1, &r2, f1, &cfg)?.to_string())
        })(),
    );

    let passed = b.cases.iter().filter(|c| c.pass).count();
    let total = b.cases.len();
    Report { cases: b.cases, passed, total }
}
