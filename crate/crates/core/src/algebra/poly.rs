use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use super::{int, parse_rational, QuadNum, Rational, Scalar};
use crate::error::{Error, Result};

/// Dense univariate polynomial; `coeffs[i]` multiplies `x^i`.
///
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients and
/// the last stored coefficient is the leading one.
#[derive(Clone, PartialEq)]
pub struct UniPoly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> UniPoly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly { coeffs: vec![S::one()] }
    }

    pub fn constant(c: S) -> Self {
        UniPoly::new(vec![c])
    }

    /// `c * x^deg`.
    pub fn monomial(c: S, deg: usize) -> Self {
        let mut coeffs = vec![S::zero(); deg + 1];
        coeffs[deg] = c;
        UniPoly::new(coeffs)
    }

    /// `x - root`.
    pub fn linear_root(root: &S) -> Self {
        UniPoly::new(vec![root.neg_ref(), S::one()])
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| S::from_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> S {
        self.coeffs.get(i).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(&S::one())
    }

    pub fn scale(&self, c: &S) -> Self {
        UniPoly::new(self.coeffs.iter().map(|x| x.mul_ref(c)).collect())
    }

    pub fn map<T: Scalar>(&self, f: impl FnMut(&S) -> T) -> UniPoly<T> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &S) -> S {
        self.coeffs.iter().rev().fold(S::zero(), |acc, c| acc.mul_ref(x).add_ref(c))
    }

    /// Quotient and remainder by a monic divisor.
    pub fn div_rem_monic(&self, divisor: &Self) -> Result<(Self, Self)> {
        if !divisor.is_monic() {
            return Err(Error::DivisorNotMonic);
        }
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![S::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let lead = rem[i + dd].clone();
            if lead.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].sub_ref(&lead.mul_ref(dc));
            }
            quot[i] = lead;
        }
        rem.truncate(dd);
        Ok((UniPoly::new(quot), UniPoly::new(rem)))
    }

    /// Division that must leave no remainder.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem_monic(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NonzeroRemainder)
        }
    }

    /// `p(x^2)`: the degree doubles and odd coefficients are zero.
    pub fn substitute_square(&self) -> Self {
        let mut coeffs = vec![S::zero(); (2 * self.coeffs.len()).saturating_sub(1)];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[2 * i] = c.clone();
        }
        UniPoly::new(coeffs)
    }

    /// True when every odd coefficient is zero.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(Scalar::is_zero)
    }

    /// The polynomial `q` with `q(y) = p(sqrt(y))`, reading only the even
    /// coefficients. Inverse of [`substitute_square`](Self::substitute_square)
    /// on even polynomials.
    pub fn even_part(&self) -> Self {
        UniPoly::new(self.coeffs.iter().step_by(2).cloned().collect())
    }

    /// Taylor shift `p(x + c)` by repeated synthetic division.
    pub fn shift(&self, c: &S) -> Self {
        let mut b = self.coeffs.clone();
        let n = b.len();
        for i in 0..n.saturating_sub(1) {
            for j in (i..n - 1).rev() {
                b[j] = b[j].add_ref(&c.mul_ref(&b[j + 1]));
            }
        }
        UniPoly::new(b)
    }
}

impl UniPoly<Rational> {
    /// `p(x + sqrt(q))` with coefficients in `Q[sqrt(q)]`.
    pub fn shift_by_sqrt(&self, q: u64) -> UniPoly<QuadNum> {
        self.to_quad().shift(&QuadNum::sqrt(q))
    }

    pub fn to_quad(&self) -> UniPoly<QuadNum> {
        self.map(|c| QuadNum::rational(c.clone()))
    }

    pub fn eval_quad(&self, x: &QuadNum) -> QuadNum {
        self.to_quad().eval(x)
    }

    /// `x^2 - c^2`, the factor carrying the eigenvalues `+-c`.
    pub fn trivial_factor(c: u64) -> Self {
        let c = int(c as i64);
        UniPoly::new(vec![-(&c * &c), Rational::zero(), Rational::one()])
    }

    /// Exact average of a nonempty list of polynomials.
    pub fn average(polys: &[Self]) -> Self {
        assert!(!polys.is_empty(), "average of no polynomials");
        let sum = polys.iter().fold(UniPoly::zero(), |acc, p| &acc + p);
        sum.scale(&Rational::new(1.into(), polys.len().into()))
    }

    /// Coefficients as `"n/d"` strings, lowest degree first.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }
}

fn combine<S: Scalar>(a: &[S], b: &[S], f: impl Fn(&S, &S) -> S) -> Vec<S> {
    let zero = S::zero();
    (0..a.len().max(b.len()))
        .map(|i| f(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect()
}

impl<S: Scalar> Add for &UniPoly<S> {
    type Output = UniPoly<S>;
    fn add(self, rhs: &UniPoly<S>) -> UniPoly<S> {
        UniPoly::new(combine(&self.coeffs, &rhs.coeffs, S::add_ref))
    }
}

impl<S: Scalar> Sub for &UniPoly<S> {
    type Output = UniPoly<S>;
    fn sub(self, rhs: &UniPoly<S>) -> UniPoly<S> {
        UniPoly::new(combine(&self.coeffs, &rhs.coeffs, S::sub_ref))
    }
}

impl<S: Scalar> Mul for &UniPoly<S> {
    type Output = UniPoly<S>;
    fn mul(self, rhs: &UniPoly<S>) -> UniPoly<S> {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        UniPoly::new(out)
    }
}

impl<S: Scalar> Neg for &UniPoly<S> {
    type Output = UniPoly<S>;
    fn neg(self) -> UniPoly<S> {
        UniPoly::new(self.coeffs.iter().map(S::neg_ref).collect())
    }
}

impl<S: Scalar> fmt::Debug for UniPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<S: Scalar> fmt::Display for UniPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for UniPoly<Rational> {
    fn serialize<Z: Serializer>(&self, s: Z) -> std::result::Result<Z::Ok, Z::Error> {
        s.collect_seq(self.coeffs.iter().map(ToString::to_string))
    }
}

impl<'de> Deserialize<'de> for UniPoly<Rational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_rational(s).ok_or_else(|| de::Error::custom(format!("invalid rational {s:?}"))))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(UniPoly::new)
    }
}
