use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::rational::Rational;

/// `(a + b·√130) / c` with integers and `c > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraicBound {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

fn sign_of(a: &BigInt, b: &BigInt) -> Ordering {
    let z = BigInt::zero();
    let (sa, sb) = (a.cmp(&z), b.cmp(&z));
    if sa != Ordering::Less && sb != Ordering::Less {
        return if sa == Ordering::Equal && sb == Ordering::Equal { Ordering::Equal } else { Ordering::Greater };
    }
    if sa != Ordering::Greater && sb != Ordering::Greater {
        return Ordering::Less;
    }
    // opposite signs: compare a² with 130·b²
    let aa = a * a;
    let bb = b * b * BigInt::from(130);
    if sa == Ordering::Greater {
        aa.cmp(&bb)
    } else {
        bb.cmp(&aa)
    }
}

impl AlgebraicBound {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        assert!(c > 0);
        AlgebraicBound { a: a.into(), b: b.into(), c: c.into() }
    }

    /// `β = (20 + √130) / 9`.
    pub fn beta() -> Self {
        AlgebraicBound::new(20, 1, 9)
    }

    pub fn signum(&self) -> Ordering {
        sign_of(&self.a, &self.b)
    }

    /// Exact comparison with a rational.
    pub fn cmp_rational(&self, q: &Rational) -> Ordering {
        // (a + b√130)/c − p/r  has the sign of  (a·r − p·c) + (b·r)·√130
        let (p, r) = (q.numer(), q.denom());
        let lhs_a = &self.a * r - p * &self.c;
        let lhs_b = &self.b * r;
        sign_of(&lhs_a, &lhs_b)
    }

    pub fn mul_rational(&self, q: &Rational) -> Self {
        let (p, r) = (q.numer(), q.denom());
        let mut out = AlgebraicBound { a: &self.a * p, b: &self.b * p, c: &self.c * r };
        if out.c.is_negative() {
            out = AlgebraicBound { a: -out.a, b: -out.b, c: -out.c };
        }
        out
    }

    pub fn to_f64(&self) -> f64 {
        let f = |x: &BigInt| x.to_string().parse::<f64>().unwrap();
        (f(&self.a) + f(&self.b) * 130f64.sqrt()) / f(&self.c)
    }
}

impl fmt::Display for AlgebraicBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}·√130)/{}", self.a, self.b, self.c)
    }
}

/// `q ≤ β`, exactly.
pub fn within_beta(q: &Rational) -> bool {
    AlgebraicBound::beta().cmp_rational(q) != Ordering::Less
}

/// `n·(20 + √130) ≥ 9·X`: true if `9X ≤ 20n`, otherwise iff `130n² ≥ (9X − 20n)²`.
pub fn compare_with_beta(n: u64, x: &Rational) -> bool {
    let n = Rational::from_integer(BigInt::from(n));
    let d = x * Rational::from_integer(9.into()) - &n * Rational::from_integer(20.into());
    if !d.is_positive() {
        return true;
    }
    &n * &n * Rational::from_integer(130.into()) >= &d * &d
}

/// The two exact identities for β: `9β² − 40β + 30 = 0` and
/// `26(1 − β)·β = β² − 94β + 90`, computed in ℚ(√130).
pub fn beta_identities() -> (bool, bool) {
    // β = (20 + s)/9 with s² = 130; products in the basis {1, s} over denominator 81
    let (a, b) = (BigInt::from(20), BigInt::from(1));
    let sq = |a: &BigInt, b: &BigInt| (a * a + b * b * BigInt::from(130), a * b * BigInt::from(2));
    let (a2, b2) = sq(&a, &b); // 81·β²
    // 81·(9β² − 40β + 30)
    let q1a = BigInt::from(9) * &a2 - BigInt::from(40 * 9) * &a + BigInt::from(30 * 81);
    let q1b = BigInt::from(9) * &b2 - BigInt::from(40 * 9) * &b;
    let first = q1a.is_zero() && q1b.is_zero();
    // 26(1 − β)β − (β² − 94β + 90), over 81
    let l_a = BigInt::from(26 * 9) * &a - BigInt::from(26) * &a2;
    let l_b = BigInt::from(26 * 9) * &b - BigInt::from(26) * &b2;
    let r_a = &a2 - BigInt::from(94 * 9) * &a + BigInt::from(90 * 81);
    let r_b = &b2 - BigInt::from(94 * 9) * &b;
    let second = l_a == r_a && l_b == r_b;
    (first, second)
}
