use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::{int, serde_rational, FieldScalar, Rational, Scalar, Sign};
use crate::error::{Error, Result};

/// Exact sign of `a + b sqrt(m)` using integer arithmetic only.
///
/// Same-sign `a`, `b` decide immediately. With opposite signs the larger of
/// `a^2` and `b^2 m` wins; equality means the value is zero.
pub fn quad_sign(a: &Rational, b: &Rational, m: u64) -> Sign {
    let sa = Sign::of_rational(a);
    let sb = if m == 0 { Sign::Zero } else { Sign::of_rational(b) };
    match (sa, sb) {
        (_, Sign::Zero) => sa,
        (Sign::Zero, _) => sb,
        _ if sa == sb => sa,
        _ => {
            let lhs = a * a;
            let rhs = b * b * int_u64(m);
            match lhs.cmp(&rhs) {
                std::cmp::Ordering::Greater => sa,
                std::cmp::Ordering::Less => sb,
                std::cmp::Ordering::Equal => Sign::Zero,
            }
        }
    }
}

fn int_u64(v: u64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Exact element `a + b sqrt(m)` of `Q[sqrt(m)]`.
///
/// When `m` is a perfect square (including 0 and 1) the irrational part is
/// folded into `a`, so `b == 0` for every such value. For non-square `m` the
/// representation is then unique and `Q[sqrt(m)]` is a field.
///
/// A value with `b == 0` is a plain rational and combines with any radicand;
/// two values with nonzero `b` must share `m`.
#[derive(Clone, Serialize, Deserialize)]
pub struct QuadNum {
    #[serde(with = "serde_rational")]
    a: Rational,
    #[serde(with = "serde_rational")]
    b: Rational,
    #[serde(skip)]
    m: u64,
}

// The radicand of a rational value is only a hint and takes no part in
// equality.
impl PartialEq for QuadNum {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.m == other.m)
    }
}

impl Eq for QuadNum {}

impl std::hash::Hash for QuadNum {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.a.hash(state);
        self.b.hash(state);
        if !self.b.is_zero() {
            self.m.hash(state);
        }
    }
}

impl QuadNum {
    pub fn new(a: Rational, b: Rational, m: u64) -> Self {
        let root = m.isqrt();
        if root * root == m {
            let a = a + b * int_u64(root);
            QuadNum { a, b: Rational::zero(), m }
        } else {
            QuadNum { a, b, m }
        }
    }

    pub fn rational(a: Rational) -> Self {
        QuadNum { a, b: Rational::zero(), m: 0 }
    }

    /// `sqrt(m)` itself.
    pub fn sqrt(m: u64) -> Self {
        QuadNum::new(Rational::zero(), int(1), m)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> u64 {
        self.m
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The rational value, if the irrational part vanished.
    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.a.clone())
    }

    pub fn sign(&self) -> Sign {
        quad_sign(&self.a, &self.b, self.m)
    }

    /// The Galois conjugate `a - b sqrt(m)`.
    pub fn conjugate(&self) -> Self {
        QuadNum { a: self.a.clone(), b: -&self.b, m: self.m }
    }

    fn joint_radicand(&self, rhs: &Self) -> Result<u64> {
        match (self.b.is_zero(), rhs.b.is_zero()) {
            (true, true) => Ok(self.m.max(rhs.m)),
            (true, false) => Ok(rhs.m),
            (false, true) => Ok(self.m),
            (false, false) if self.m == rhs.m => Ok(self.m),
            _ => Err(Error::RadicandMismatch { left: self.m, right: rhs.m }),
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        let m = self.joint_radicand(rhs)?;
        Ok(QuadNum { a: &self.a + &rhs.a, b: &self.b + &rhs.b, m })
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        let m = self.joint_radicand(rhs)?;
        Ok(QuadNum { a: &self.a - &rhs.a, b: &self.b - &rhs.b, m })
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        let m = self.joint_radicand(rhs)?;
        if self.b.is_zero() {
            return Ok(QuadNum { a: &self.a * &rhs.a, b: &self.a * &rhs.b, m });
        }
        if rhs.b.is_zero() {
            return Ok(QuadNum { a: &self.a * &rhs.a, b: &self.b * &rhs.a, m });
        }
        let a = &self.a * &rhs.a + &self.b * &rhs.b * int_u64(m);
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Ok(QuadNum { a, b, m })
    }

    /// Approximate value, for diagnostics only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * (self.m as f64).sqrt()
    }
}

impl fmt::Debug for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt({})", self.b, self.m)
        } else if self.b.is_negative() {
            write!(f, "{} - {}*sqrt({})", self.a, -&self.b, self.m)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.m)
        }
    }
}

impl Scalar for QuadNum {
    fn zero() -> Self {
        QuadNum::rational(Rational::zero())
    }
    fn one() -> Self {
        QuadNum::rational(int(1))
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self.try_add(rhs).expect("QuadNum addition")
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.try_sub(rhs).expect("QuadNum subtraction")
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.try_mul(rhs).expect("QuadNum multiplication")
    }
    fn neg_ref(&self) -> Self {
        QuadNum { a: -&self.a, b: -&self.b, m: self.m }
    }
    fn from_rational(r: Rational) -> Self {
        QuadNum::rational(r)
    }
}

impl FieldScalar for QuadNum {
    fn inv(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            return None;
        }
        // Non-square radicand (squares are folded), so the norm is nonzero.
        let norm = &self.a * &self.a - &self.b * &self.b * int_u64(self.m);
        Some(QuadNum { a: &self.a / &norm, b: -&self.b / &norm, m: self.m })
    }
}

impl Add for &QuadNum {
    type Output = QuadNum;
    fn add(self, rhs: &QuadNum) -> QuadNum {
        self.add_ref(rhs)
    }
}

impl Sub for &QuadNum {
    type Output = QuadNum;
    fn sub(self, rhs: &QuadNum) -> QuadNum {
        self.sub_ref(rhs)
    }
}

impl Mul for &QuadNum {
    type Output = QuadNum;
    fn mul(self, rhs: &QuadNum) -> QuadNum {
        self.mul_ref(rhs)
    }
}

impl Neg for &QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use proptest::prelude::*;

    #[test]
    fn sign_examples() {
        assert_eq!(quad_sign(&int(3), &int(-2), 2), Sign::Positive);
        assert_eq!(quad_sign(&int(1), &int(-1), 1), Sign::Zero);
        assert_eq!(quad_sign(&int(-2), &int(1), 3), Sign::Negative);
        assert_eq!(quad_sign(&int(0), &int(0), 5), Sign::Zero);
        assert_eq!(quad_sign(&int(-2), &int(1), 4), Sign::Zero);
        assert_eq!(quad_sign(&int(-1), &int(5), 0), Sign::Negative);
    }

    #[test]
    fn conjugate_product_is_rational() {
        let x = QuadNum::new(int(1), int(1), 2);
        let y = x.conjugate();
        assert_eq!(&x * &y, QuadNum::rational(int(-1)));
    }

    #[test]
    fn perfect_square_radicand_folds() {
        let v = QuadNum::new(int(-2), int(1), 4);
        assert!(Scalar::is_zero(&v));
        assert_eq!(v.sign(), Sign::Zero);
        assert_eq!(QuadNum::sqrt(9).to_rational(), Some(int(3)));
    }

    #[test]
    fn radicand_mismatch_is_an_error() {
        let x = QuadNum::sqrt(2);
        let y = QuadNum::sqrt(3);
        assert!(matches!(x.try_add(&y), Err(Error::RadicandMismatch { .. })));
        assert!(matches!(x.try_mul(&y), Err(Error::RadicandMismatch { .. })));
        // rationals mix with anything
        let r = QuadNum::rational(rat(1, 2));
        assert_eq!(x.try_mul(&r).unwrap(), QuadNum::new(int(0), rat(1, 2), 2));
        assert_eq!(r.try_add(&y).unwrap().radicand(), 3);
    }

    #[test]
    fn inverse() {
        let x = QuadNum::new(rat(3, 2), int(-2), 7);
        let one = &x * &x.inv().unwrap();
        assert_eq!(one, QuadNum::one());
        assert!(QuadNum::zero().inv().is_none());
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-400i64..400, 1i64..30).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn sign_matches_float_witness(a in small_rational(), b in small_rational(), m in 0u64..50) {
            let v = QuadNum::new(a.clone(), b.clone(), m);
            let exact = quad_sign(&a, &b, m);
            prop_assert_eq!(exact, v.sign());
            let approx = v.to_f64();
            if approx.abs() > 1e-9 {
                let expect = if approx > 0.0 { Sign::Positive } else { Sign::Negative };
                prop_assert_eq!(exact, expect);
            }
        }
    }
}
