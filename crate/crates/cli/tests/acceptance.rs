//! Acceptance suite. Run with `--nocapture` to see one line per criterion.

use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use epsarith::linalg::FieldMatrix;
use epsarith::quantize::{self, EpsilonConfig, Norm, RealVector, Strategy};
use epsarith::signal::{gram_schmidt, VectorSignal};
use epsarith::{ArithOp, Error, FieldElement, HpComplex, NumberField, Rational};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EMBED_TOL: f64 = 1e-8;
const MIN_DIGITS: u32 = 60;
const GOLDEN_PRODUCT_LIMIT: Duration = Duration::from_millis(1);
const CLOSED_FORM_LIMIT: Duration = Duration::from_secs(1);
const AXIOM_LIMIT: Duration = Duration::from_secs(30);
const EMBED_LIMIT: Duration = Duration::from_secs(60);
const SOLVE_LIMIT: Duration = Duration::from_secs(60);
const TOTAL_LIMIT: Duration = Duration::from_secs(180);

type Outcome = Result<String, String>;
type Check = fn() -> Outcome;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within_time(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

fn n(k: i64) -> Rational {
    Rational::from_integer(BigInt::from(k))
}

fn rat(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(BigInt::from(rng.gen_range(-20i64..=20)), BigInt::from(rng.gen_range(1i64..=10)))
}

fn elem(rng: &mut ChaCha8Rng, f: &Arc<NumberField>) -> FieldElement {
    FieldElement::new(f, (0..f.degree()).map(|_| rat(rng)).collect()).unwrap()
}

fn nonzero(rng: &mut ChaCha8Rng, f: &Arc<NumberField>) -> FieldElement {
    loop {
        let e = elem(rng, f);
        if !e.is_zero() {
            return e;
        }
    }
}

fn test_fields() -> Vec<(&'static str, Arc<NumberField>)> {
    vec![
        ("x^2+1", NumberField::gaussian()),
        ("x^4-10x^2+1", NumberField::sqrt2_plus_sqrt3()),
        ("cyclotomic-5", NumberField::cyclotomic(5).unwrap()),
    ]
}

fn criterion_1() -> Outcome {
    let cases = [
        (NumberField::sqrt2_plus_sqrt3(), [12, 4, -108, -20]),
        (NumberField::cyclotomic(5).unwrap(), [0, 2, 2, 1]),
    ];
    let mut worst = Duration::ZERO;
    for (f, expected) in cases {
        let a = FieldElement::from_ints(&f, &[1, 1, 1, 1]).unwrap();
        let b = FieldElement::from_ints(&f, &[1, 1, -1, -1]).unwrap();
        let t = Instant::now();
        let got = a.checked_mul(&b).unwrap();
        let elapsed = t.elapsed();
        worst = worst.max(elapsed);
        ensure(got == FieldElement::from_ints(&f, &expected).unwrap(), || {
            format!("{} gave {got}, expected {expected:?}", f.min_poly())
        })?;
        within_time(elapsed, GOLDEN_PRODUCT_LIMIT)?;
    }
    Ok(format!("both golden products exact, slowest {worst:?}"))
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let f = NumberField::sqrt2_plus_sqrt3();
    let c5 = NumberField::cyclotomic(5).unwrap();
    for i in 0..100 {
        let (a, b) = (elem(&mut rng, &f), elem(&mut rng, &f));
        let r1: Vec<Rational> = a.coeffs().to_vec();
        let r2: Vec<Rational> = b.coeffs().to_vec();
        let (r11, r12, r13, r14) = (&r1[0], &r1[1], &r1[2], &r1[3]);
        let (r21, r22, r23, r24) = (&r2[0], &r2[1], &r2[2], &r2[3]);

        let display = vec![
            r11 * r21 - r12 * r24 - r13 * r23 - r14 * (r22 + n(10) * r24),
            r11 * r22 + r12 * r21 - r13 * r24 - r14 * r23,
            r11 * r23 + r12 * (r22 + n(10) * r24) + r13 * (r21 + n(10) * r23) + r14 * (n(10) * r22 + n(99) * r24),
            r11 * r24 + r12 * r23 + r13 * (r22 + n(10) * r24) + r14 * (r21 + n(10) * r23),
        ];
        let got = a.inner(&b).unwrap();
        ensure(got.coeffs() == display.as_slice(), || format!("sqrt2+sqrt3 inner mismatch at sample {i}"))?;

        let squared = vec![
            r11 * r11 - r13 * r13 - n(10) * r14 * r14 - n(2) * r12 * r14,
            n(2) * r11 * r12 - n(2) * r13 * r14,
            r12 * r12 + n(10) * r13 * r13 + n(99) * r14 * r14 + n(2) * r11 * r13 + n(20) * r12 * r14,
            n(2) * r11 * r14 + n(2) * r12 * r13 + n(20) * r13 * r14,
        ];
        ensure(a.inner(&a).unwrap().coeffs() == squared.as_slice(), || {
            format!("squared norm mismatch at sample {i}")
        })?;

        let ca = FieldElement::new(&c5, r1.clone()).unwrap();
        let cb = FieldElement::new(&c5, r2.clone()).unwrap();
        let corrected = vec![
            r11 * (r21 - r22) + r12 * (r22 - r23) + r13 * (r23 - r24) + r14 * r24,
            -(r11 * r22) + r12 * (r21 - r23) + r13 * (r22 - r24) + r14 * r23,
            r11 * (r24 - r22) - r12 * r23 + r13 * (r21 - r24) + r14 * r22,
            r11 * (r23 - r22) + r12 * (r24 - r23) - r13 * r24 + r14 * r21,
        ];
        let got = ca.inner(&cb).unwrap();
        ensure(got.coeffs() == corrected.as_slice(), || format!("cyclotomic-5 inner mismatch at sample {i}"))?;
        let printed = r11 * (r23 - r22) + r12 * (r24 - r23) + r13 * (r21 - r24) + r14 * r21;
        ensure(&printed - &got.coeffs()[3] == r13 * r21, || {
            format!("printed 4th cyclotomic component differs by something other than r13*r21 at sample {i}")
        })?;
    }
    within_time(t.elapsed(), CLOSED_FORM_LIMIT)?;
    Ok(format!("100 vectors, three displays exact in {:?}", t.elapsed()))
}

fn criterion_3() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (name, f) in test_fields() {
        let xs: Vec<FieldElement> = (0..500).map(|_| elem(&mut rng, &f)).collect();
        for i in 0..xs.len() {
            let (a, b, c) = (&xs[i], &xs[(i + 1) % 500], &xs[(i + 2) % 500]);
            let ok = &(a * b) * c == a * &(b * c)
                && &(a + b) + c == a + &(b + c)
                && a * b == b * a
                && a + b == b + a
                && a * &(b + c) == &(a * b) + &(a * c)
                && (a.is_zero() || (a * &a.inverse().unwrap()).is_one());
            ensure(ok, || format!("{name}: axiom failed at element {i}"))?;
        }
    }
    within_time(t.elapsed(), AXIOM_LIMIT)?;
    Ok(format!("3 fields x 500 elements exact in {:?}", t.elapsed()))
}

fn apply(op: ArithOp, a: &HpComplex, b: &HpComplex) -> HpComplex {
    match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Div => a.div(b).unwrap(),
    }
}

fn criterion_4() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0f64;
    for (name, f) in test_fields() {
        ensure(f.precision().digits >= MIN_DIGITS, || format!("{name}: precision below {MIN_DIGITS} digits"))?;
        for _ in 0..500 {
            let a = elem(&mut rng, &f);
            let b = nonzero(&mut rng, &f);
            let (ea, eb) = (a.embed().unwrap(), b.embed().unwrap());
            let scale = 1.0 + ea.mul(&eb).abs();
            for op in [ArithOp::Add, ArithOp::Sub, ArithOp::Mul, ArithOp::Div] {
                let lhs = a.arith(op, &b).unwrap().embed().unwrap();
                let err = lhs.sub(&apply(op, &ea, &eb)).abs() / scale;
                worst = worst.max(err);
                ensure(err <= EMBED_TOL, || format!("{name} {op:?}: relative error {err:e}"))?;
            }
        }
    }
    within_time(t.elapsed(), EMBED_LIMIT)?;
    Ok(format!("3 fields x 500 pairs x 4 ops, worst scaled error {worst:.1e} in {:?}", t.elapsed()))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0f64;
    for (name, f) in test_fields() {
        for i in 0..1000 {
            let (a, b) = (elem(&mut rng, &f), elem(&mut rng, &f));
            ensure(a.conjugate().conjugate() == a, || format!("{name}: involution fails at {i}"))?;
            ensure(a.inner(&b).unwrap() == b.inner(&a).unwrap().conjugate(), || {
                format!("{name}: conjugate symmetry fails at {i}")
            })?;
            let err = a.conjugate().embed().unwrap().sub(&a.embed().unwrap().conj()).abs();
            worst = worst.max(err);
            ensure(err <= EMBED_TOL, || format!("{name}: embedding of conjugate off by {err:e}"))?;
        }
    }
    Ok(format!("3 fields x 1000 elements, worst embedding error {worst:.1e}"))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let vectors: Vec<Vec<f64>> = (0..1000)
        .map(|_| {
            let m = rng.gen_range(1..=8);
            (0..m)
                .map(|_| {
                    let mag = 10f64.powi(rng.gen_range(-12..=6));
                    rng.gen_range(-1.0..1.0) * mag
                })
                .collect()
        })
        .collect();
    let mut checked = 0;
    for k in [3u32, 6, 9] {
        let eps = Rational::new(BigInt::from(1), BigInt::from(10u64.pow(k)));
        for norm in [Norm::L2, Norm::Linf] {
            for strategy in [Strategy::Dyadic, Strategy::ContinuedFraction] {
                let cfg = EpsilonConfig::exact(eps.clone(), norm, strategy).unwrap();
                for (i, xs) in vectors.iter().enumerate() {
                    let r = RealVector::from_f64s(xs).unwrap();
                    let q = quantize::quantize(&r, &cfg);
                    let diffs: Vec<Rational> = r.values().zip(&q).map(|(a, b)| a - b).collect();
                    let ok = match norm {
                        Norm::L2 => diffs.iter().map(|d| d * d).fold(Rational::zero(), |s, x| s + x) < &eps * &eps,
                        Norm::Linf => diffs.iter().all(|d| d.abs() < eps),
                    };
                    ensure(q.len() == xs.len() && ok, || {
                        format!("vector {i} at eps=1e-{k}, {norm:?}, {strategy:?} not within eps")
                    })?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} quantizations within eps, exact"))
}

#[derive(Clone, Debug, PartialEq)]
struct Gauss(Rational, Rational);

impl Gauss {
    fn mul(&self, o: &Gauss) -> Gauss {
        Gauss(&self.0 * &o.0 - &self.1 * &o.1, &self.0 * &o.1 + &self.1 * &o.0)
    }
    fn conj(&self) -> Gauss {
        Gauss(self.0.clone(), -&self.1)
    }
    fn add(&self, o: &Gauss) -> Gauss {
        Gauss(&self.0 + &o.0, &self.1 + &o.1)
    }
}

fn criterion_7() -> Outcome {
    let f = epsarith_cli::load_field(&repo_root().join("fields/gaussian.json")).map_err(|e| e.message)?;
    ensure(f == NumberField::gaussian(), || "fields/gaussian.json is not x^2+1 with a* = -a".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..100 {
        let (l1, l2) = (rng.gen_range(1..=16), rng.gen_range(1..=16));
        let (s1, s2) = (rng.gen_range(-5i64..=5), rng.gen_range(-5i64..=5));
        let x: Vec<Gauss> = (0..l1).map(|_| Gauss(rat(&mut rng), rat(&mut rng))).collect();
        let y: Vec<Gauss> = (0..l2).map(|_| Gauss(rat(&mut rng), rat(&mut rng))).collect();

        let mut expected = vec![Gauss(n(0), n(0)); l1 + l2 - 1];
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                expected[i + j] = expected[i + j].add(&xi.mul(&yj.conj()));
            }
        }

        let lift = |v: &[Gauss]| -> Vec<FieldElement> {
            v.iter().map(|g| FieldElement::new(&f, vec![g.0.clone(), g.1.clone()]).unwrap()).collect()
        };
        let out = VectorSignal::new(s1, lift(&x))
            .unwrap()
            .convolve(&VectorSignal::new(s2, lift(&y)).unwrap())
            .unwrap();
        let got: Vec<Gauss> = out
            .elements()
            .iter()
            .map(|e| Gauss(e.coeffs()[0].clone(), e.coeffs()[1].clone()))
            .collect();
        ensure(out.start() == s1 + s2 && got == expected, || format!("convolution mismatch on pair {trial}"))?;
    }
    Ok("100 pairs, length <= 16, exact".into())
}

fn random_matrix(rng: &mut ChaCha8Rng, f: &Arc<NumberField>, rows: usize, cols: usize) -> FieldMatrix {
    FieldMatrix::new(rows, cols, (0..rows * cols).map(|_| elem(rng, f)).collect()).unwrap()
}

fn criterion_8() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut systems = 0;
    for (name, f) in test_fields() {
        for size in 1..=6 {
            let a = loop {
                let a = random_matrix(&mut rng, &f, size, size);
                if !a.determinant().unwrap().is_zero() {
                    break a;
                }
            };
            let b = random_matrix(&mut rng, &f, size, 1);
            let x = a.solve(&b).map_err(|e| format!("{name} {size}x{size}: {e}"))?;
            ensure(a.mul(&x).unwrap().sub(&b).unwrap().is_zero(), || {
                format!("{name} {size}x{size}: nonzero residual")
            })?;

            if size >= 2 {
                // last row is a combination of the rows above it
                let mut rows: Vec<Vec<FieldElement>> = (0..size).map(|r| a.row(r).to_vec()).collect();
                let weights: Vec<FieldElement> = (0..size - 1).map(|_| elem(&mut rng, &f)).collect();
                rows[size - 1] = (0..size)
                    .map(|c| {
                        weights
                            .iter()
                            .zip(&rows)
                            .fold(FieldElement::zero(&f), |acc, (w, row)| &acc + &(w * &row[c]))
                    })
                    .collect();
                let singular = FieldMatrix::from_rows(rows).unwrap();
                ensure(singular.solve(&b) == Err(Error::Singular), || {
                    format!("{name} {size}x{size}: singular system not rejected")
                })?;
            }

            if size <= 4 {
                let tall = random_matrix(&mut rng, &f, size + 2, size);
                let x0 = random_matrix(&mut rng, &f, size, 1);
                let b = tall.mul(&x0).unwrap();
                let x = tall.least_squares(&b).map_err(|e| format!("{name} lsq {size}: {e}"))?;
                ensure(x == x0, || format!("{name} lsq {}x{size}: did not reproduce x0", size + 2))?;
            }
            systems += 1;
        }
    }
    within_time(t.elapsed(), SOLVE_LIMIT)?;
    Ok(format!("{systems} square systems plus singular and lsq variants in {:?}", t.elapsed()))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut runs = 0;
    for (name, f) in test_fields() {
        for len in [2usize, 3, 4] {
            for _ in 0..3 {
                let inputs: Vec<VectorSignal> = (0..=len)
                    .map(|_| VectorSignal::new(0, (0..len).map(|_| elem(&mut rng, &f)).collect()).unwrap())
                    .collect();
                let out = gram_schmidt(&inputs).map_err(|e| format!("{name} L={len}: {e}"))?;
                ensure(out.iter().any(VectorSignal::is_zero), || format!("{name} L={len}: no zero output"))?;
                let live: Vec<&VectorSignal> = out.iter().filter(|s| !s.is_zero()).collect();
                for i in 0..live.len() {
                    for j in 0..i {
                        ensure(live[i].inner(live[j]).unwrap().is_zero(), || {
                            format!("{name} L={len}: outputs {j} and {i} not orthogonal")
                        })?;
                    }
                }
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} runs, each with a zero output and exact orthogonality"))
}

fn repo_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn criterion_10() -> Outcome {
    let golden = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for (format, file) in [("table", "demo.txt"), ("json", "demo.json")] {
        let out = Command::new(env!("CARGO_BIN_EXE_epsarith"))
            .args(["--format", format, "demo"])
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.success(), || format!("demo --format {format} exited with {}", out.status))?;
        let expected = std::fs::read(golden.join(file)).map_err(|e| e.to_string())?;
        ensure(out.stdout == expected, || format!("demo --format {format} differs from golden/{file}"))?;
    }
    let report = epsarith_cli::demo::run(&NumberField::sqrt2_plus_sqrt3());
    ensure(report.all_passed(), || "a demo case failed".into())?;
    Ok(format!("{} demo cases pass, table and json byte-equal to golden", report.total))
}

#[test]
fn acceptance() {
    let criteria: [(&str, Check); 10] = [
        ("golden products", criterion_1),
        ("closed-form inner products", criterion_2),
        ("field axioms", criterion_3),
        ("embedding homomorphism", criterion_4),
        ("conjugation", criterion_5),
        ("quantization bound", criterion_6),
        ("convolution oracle", criterion_7),
        ("linear solve", criterion_8),
        ("orthogonality counting", criterion_9),
        ("demo golden files", criterion_10),
    ];
    let start = Instant::now();
    let mut failures = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match check() {
            Ok(detail) => println!("PASS criterion {:>2} {name}: {detail} [{:?}]", i + 1, t.elapsed()),
            Err(why) => {
                println!("FAIL criterion {:>2} {name}: {why}", i + 1);
                failures.push(i + 1);
            }
        }
    }
    let total = start.elapsed();
    println!("acceptance: {}/10 passed in {total:?}", 10 - failures.len());
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
    assert!(total < TOTAL_LIMIT, "suite took {total:?}");
}
