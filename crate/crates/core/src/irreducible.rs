//! Irreducibility checks for candidate minimal polynomials.
//!
//! Everything runs on the monic integer polynomial `q(y) = D^n p(y / D)`,
//! where `D` clears the denominators of the monic rational `p`. `q` and `p`
//! factor in lockstep, and by Gauss's lemma any rational factorisation of
//! `q` can be taken over monic integer polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::RationalPoly;
use crate::rational::Rational;

/// How a polynomial was shown to be irreducible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Irreducibility {
    /// Degree ≤ 3 and no rational root.
    NoRationalRoot,
    /// Degree 4, no rational root and no quadratic factor.
    NoLinearOrQuadraticFactor,
    /// Irreducible modulo the given prime.
    ModPrime(u64),
    /// Not proven; accepted because the caller asked for it.
    Waived,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Irreducible(Irreducibility),
    /// A monic nontrivial factor of the input.
    Reducible(RationalPoly),
    Inconclusive,
}

const TRIAL_DIVISION_BOUND: u64 = 1 << 20;
const MAX_DIVISORS: usize = 1 << 14;
const MOD_PRIME_BOUND: u64 = 300;

/// Checks a monic rational polynomial of degree ≥ 2.
pub fn check(p: &RationalPoly) -> Verdict {
    let n = p.degree().expect("nonzero polynomial");
    let (q, d) = integer_monic(p);
    let unscale = |factor: &[BigInt]| -> RationalPoly {
        // y = D x
        let k = factor.len() - 1;
        let coeffs = factor
            .iter()
            .enumerate()
            .map(|(i, c)| Rational::new(c.clone(), num_traits::pow(d.clone(), k - i)))
            .collect();
        RationalPoly::new(coeffs)
    };

    let divisors = if q[0].is_zero() {
        return Verdict::Reducible(unscale(&[BigInt::zero(), BigInt::one()]));
    } else {
        signed_divisors(&q[0])
    };

    let mut root_test_done = false;
    if let Some(divs) = &divisors {
        for r in divs {
            if eval_int(&q, r).is_zero() {
                return Verdict::Reducible(unscale(&[-r, BigInt::one()]));
            }
        }
        root_test_done = true;
    }

    if n <= 3 && root_test_done {
        return Verdict::Irreducible(Irreducibility::NoRationalRoot);
    }
    if n == 4 && root_test_done {
        let divs = divisors.as_ref().unwrap();
        return match quadratic_factor(&q, divs) {
            Some(f) => Verdict::Reducible(unscale(&f)),
            None => Verdict::Irreducible(Irreducibility::NoLinearOrQuadraticFactor),
        };
    }
    for prime in primes_below(MOD_PRIME_BOUND) {
        let reduced: Vec<u64> = q
            .iter()
            .map(|c| c.mod_floor(&BigInt::from(prime)).to_u64().unwrap())
            .collect();
        if irreducible_mod_p(&reduced, prime) {
            return Verdict::Irreducible(Irreducibility::ModPrime(prime));
        }
    }
    Verdict::Inconclusive
}

/// Integer coefficients of `D^n p(y/D)`, ascending, and `D`.
fn integer_monic(p: &RationalPoly) -> (Vec<BigInt>, BigInt) {
    let n = p.degree().unwrap();
    let d = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let q = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let v = c * Rational::from_integer(num_traits::pow(d.clone(), n - i));
            debug_assert!(v.is_integer());
            v.to_integer()
        })
        .collect();
    (q, d)
}

fn eval_int(q: &[BigInt], x: &BigInt) -> BigInt {
    q.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// All divisors of `n` with both signs, or `None` when `n` is too large to
/// factor by trial division.
fn signed_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let mut rest = n.abs();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut p = 2u64;
    while p <= TRIAL_DIVISION_BOUND {
        let bp = BigInt::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            e += 1;
        }
        if e > 0 {
            factors.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        let bound = BigInt::from(TRIAL_DIVISION_BOUND);
        // Whatever survives trial division up to B is prime only if < B^2.
        if rest >= &bound * &bound && BigInt::from(p) * BigInt::from(p) <= rest {
            return None;
        }
        factors.push((rest, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (prime, e) in &factors {
        let mut next = Vec::with_capacity(divs.len() * (*e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=*e {
                next.push(d * &pk);
                pk *= prime;
            }
        }
        if next.len() > MAX_DIVISORS {
            return None;
        }
        divs = next;
    }
    divs.sort();
    let mut signed: Vec<BigInt> = divs.iter().flat_map(|d| [d.clone(), -d]).collect();
    signed.sort_by_key(|d| (d.abs(), d.is_negative()));
    Some(signed)
}

/// A monic integer quadratic factor `[c, b, 1]` of the monic integer
/// quartic `q`, if any.
fn quadratic_factor(q: &[BigInt], divisors: &[BigInt]) -> Option<[BigInt; 3]> {
    let (a0, a1, a2, a3) = (&q[0], &q[1], &q[2], &q[3]);
    let verify = |b: &BigInt, c: &BigInt, e: &BigInt| -> bool {
        let d = a3 - b;
        &(e + b * &d + c) == a2 && &(b * e + c * &d) == a1
    };
    for c in divisors {
        let e = a0 / c;
        if &e * c != *a0 {
            continue;
        }
        if &e != c {
            let num = a1 - c * a3;
            let den = &e - c;
            if (&num % &den).is_zero() {
                let b = num / den;
                if verify(&b, c, &e) {
                    return Some([c.clone(), b, BigInt::one()]);
                }
            }
        } else if a1 == &(c * a3) {
            let disc = a3 * a3 - BigInt::from(4) * (a2 - BigInt::from(2) * c);
            if disc.is_negative() {
                continue;
            }
            let s = disc.sqrt();
            if &s * &s == disc && (a3 + &s).is_even() {
                let b = (a3 + &s) / 2;
                if verify(&b, c, &e) {
                    return Some([c.clone(), b, BigInt::one()]);
                }
            }
        }
    }
    None
}

fn primes_below(bound: u64) -> impl Iterator<Item = u64> {
    (2..bound).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

// Dense polynomials over F_p, ascending, trimmed.
type Fp = Vec<u64>;

fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn fp_rem(a: &[u64], m: &[u64], p: u64) -> Fp {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    let lc_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = r[top] * lc_inv % p;
        if c != 0 {
            for (j, &mj) in m.iter().enumerate() {
                let idx = top - dm + j;
                r[idx] = (r[idx] + p - c * mj % p) % p;
            }
        }
        r.pop();
        r = trim(r);
    }
    trim(r)
}

fn fp_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    fp_rem(&out, m, p)
}

fn fp_powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Fp {
    let mut result = vec![1u64];
    let mut b = fp_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = fp_mulmod(&result, &b, m, p);
        }
        b = fp_mulmod(&b, &b, m, p);
        e >>= 1;
    }
    result
}

fn fp_sub(a: &[u64], b: &[u64], p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Fp {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Rabin's test for a monic `f` over F_p.
fn irreducible_mod_p(f: &[u64], p: u64) -> bool {
    let n = f.len() - 1;
    let x: Fp = vec![0, 1];
    // frob[k] = x^(p^k) mod f
    let mut frob = vec![fp_rem(&x, f, p)];
    for k in 1..=n {
        let next = fp_powmod(&frob[k - 1], p, f, p);
        frob.push(next);
    }
    if fp_sub(&frob[n], &x, p) != fp_sub(&fp_rem(&x, f, p), &x, p) {
        return false;
    }
    let prime_divisors = (2..=n).filter(|r| n.is_multiple_of(*r) && (2..*r).all(|d| r % d != 0));
    for r in prime_divisors {
        let g = fp_gcd(f, &fp_sub(&frob[n / r], &x, p), p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}
