//! Checks against independent routes: the closed-form component formulas,
//! exact complex arithmetic for `Q(i)`, and the numeric embedding.

use std::sync::Arc;

use epsarith::signal::VectorSignal;
use epsarith::{FieldElement, HpComplex, NumberField, Rational};
use num_bigint::BigInt;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rat(rng: &mut impl Rng) -> Rational {
    Rational::new(BigInt::from(rng.gen_range(-30i64..=30)), BigInt::from(rng.gen_range(1i64..=9)))
}

fn elem(rng: &mut impl Rng, f: &Arc<NumberField>) -> FieldElement {
    FieldElement::new(f, (0..f.degree()).map(|_| rat(rng)).collect()).unwrap()
}

fn n(k: i64) -> Rational {
    Rational::from_integer(BigInt::from(k))
}

#[test]
fn sqrt2_plus_sqrt3_inner_product_closed_form() {
    let f = NumberField::sqrt2_plus_sqrt3();
    let mut rng = ChaCha8Rng::seed_from_u64(36);
    for _ in 0..100 {
        let (a, b) = (elem(&mut rng, &f), elem(&mut rng, &f));
        let [r11, r12, r13, r14] = [0, 1, 2, 3].map(|i| a.coeffs()[i].clone());
        let [r21, r22, r23, r24] = [0, 1, 2, 3].map(|i| b.coeffs()[i].clone());
        let expected = vec![
            &r11 * &r21 - &r12 * &r24 - &r13 * &r23 - &r14 * (&r22 + n(10) * &r24),
            &r11 * &r22 + &r12 * &r21 - &r13 * &r24 - &r14 * &r23,
            &r11 * &r23
                + &r12 * (&r22 + n(10) * &r24)
                + &r13 * (&r21 + n(10) * &r23)
                + &r14 * (n(10) * &r22 + n(99) * &r24),
            &r11 * &r24 + &r12 * &r23 + &r13 * (&r22 + n(10) * &r24) + &r14 * (&r21 + n(10) * &r23),
        ];
        assert_eq!(a.inner(&b).unwrap().coeffs(), expected.as_slice());
    }
}

// Exact Gaussian rationals for the Q(i) oracle.
#[derive(Clone, Debug, PartialEq)]
struct Gauss(Rational, Rational);

impl Gauss {
    fn mul_conj(&self, o: &Gauss) -> Gauss {
        // (a + bi)(c - di)
        Gauss(&self.0 * &o.0 + &self.1 * &o.1, &self.1 * &o.0 - &self.0 * &o.1)
    }
    fn add(&self, o: &Gauss) -> Gauss {
        Gauss(&self.0 + &o.0, &self.1 + &o.1)
    }
}

#[test]
fn gaussian_signal_inner_matches_complex_arithmetic() {
    let f = NumberField::gaussian();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let len = rng.gen_range(1..8);
        let s1: Vec<FieldElement> = (0..len).map(|_| elem(&mut rng, &f)).collect();
        let s2: Vec<FieldElement> = (0..len).map(|_| elem(&mut rng, &f)).collect();
        let g = |e: &FieldElement| Gauss(e.coeffs()[0].clone(), e.coeffs()[1].clone());
        let expected = s1
            .iter()
            .zip(&s2)
            .fold(Gauss(n(0), n(0)), |acc, (a, b)| acc.add(&g(a).mul_conj(&g(b))));
        let got = VectorSignal::new(0, s1)
            .unwrap()
            .inner(&VectorSignal::new(0, s2).unwrap())
            .unwrap();
        assert_eq!(g(&got), expected);
    }
}

fn close(a: &HpComplex, b: &HpComplex, scale: f64) -> bool {
    a.sub(b).abs() <= 1e-8 * (1.0 + scale)
}

#[test]
fn embedding_intertwines_signal_inner_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for f in [NumberField::sqrt2_plus_sqrt3(), NumberField::cyclotomic(5).unwrap(), NumberField::gaussian()] {
        for _ in 0..20 {
            let len = rng.gen_range(1..6);
            let s1: Vec<FieldElement> = (0..len).map(|_| elem(&mut rng, &f)).collect();
            let s2: Vec<FieldElement> = (0..len).map(|_| elem(&mut rng, &f)).collect();
            let bits = f.precision().bits();
            let mut expected = HpComplex::zero(bits);
            let mut scale = 0.0;
            for (a, b) in s1.iter().zip(&s2) {
                let (za, zb) = (a.embed().unwrap(), b.embed().unwrap());
                scale += za.abs() * zb.abs();
                expected = expected.add(&za.mul(&zb.conj()));
            }
            let got = VectorSignal::new(0, s1)
                .unwrap()
                .inner(&VectorSignal::new(0, s2).unwrap())
                .unwrap()
                .embed()
                .unwrap();
            assert!(close(&got, &expected, scale));
        }
    }
}

#[test]
fn solve_agrees_with_complex_embedding() {
    use epsarith::linalg::FieldMatrix;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for f in [NumberField::sqrt2_plus_sqrt3(), NumberField::cyclotomic(5).unwrap()] {
        let a: Vec<FieldElement> = (0..9).map(|_| elem(&mut rng, &f)).collect();
        let b: Vec<FieldElement> = (0..3).map(|_| elem(&mut rng, &f)).collect();
        let ma = FieldMatrix::new(3, 3, a).unwrap();
        let x = ma.solve(&FieldMatrix::column(b.clone()).unwrap()).unwrap();
        for (r, rhs) in b.iter().enumerate() {
            let bits = f.precision().bits();
            let mut acc = HpComplex::zero(bits);
            let mut scale = 0.0;
            for c in 0..3 {
                let (za, zx) = (ma.get(r, c).embed().unwrap(), x.get(c, 0).embed().unwrap());
                scale += za.abs() * zx.abs();
                acc = acc.add(&za.mul(&zx));
            }
            assert!(close(&acc, &rhs.embed().unwrap(), scale));
        }
    }
}

#[test]
fn numeric_roots() {
    let prec = epsarith::Precision::default();
    let x2 = NumberField::gaussian();
    let i = epsarith::field::find_numeric_root(&x2, Some(Complex64::new(0.0, 1.0))).unwrap();
    assert_eq!(i.to_c64(), Complex64::new(0.0, 1.0));

    let f = NumberField::sqrt2_plus_sqrt3();
    let r = epsarith::field::find_numeric_root(&f, Some(Complex64::new(3.1, 0.0))).unwrap();
    assert!(f.min_poly().eval_complex(&r).abs() < prec.root_tolerance());
    assert!(r.to_decimal_string(10).starts_with("3.1462643699"));

    let c5 = NumberField::cyclotomic(5).unwrap();
    let w = epsarith::field::find_numeric_root(&c5, None).unwrap();
    assert!(w.to_decimal_string(10).starts_with("0.3090169944 + 0.9510565163i"));
}
