use std::ops::{Add, Mul, Sub};

use super::{Rational, Scalar, UniPoly};

/// Dense polynomial in `(lambda, t_r, t_c)` with rational coefficients.
///
/// `get(i, p, q)` is the coefficient of `lambda^i t_r^p t_c^q`. Dimensions are
/// fixed at construction; reads past them yield zero.
#[derive(Clone, PartialEq, Debug)]
pub struct TriPoly {
    dims: [usize; 3],
    coeffs: Vec<Rational>,
}

impl TriPoly {
    /// All-zero polynomial with room for degrees `< dims` on each axis.
    pub fn zeros(dims: [usize; 3]) -> Self {
        TriPoly { dims, coeffs: vec![Rational::zero(); dims[0] * dims[1] * dims[2]] }
    }

    /// Builds from `(lambda power, t_r power, t_c power, coefficient)` terms.
    pub fn from_terms(terms: &[(usize, usize, usize, Rational)]) -> Self {
        let mut dims = [1, 1, 1];
        for (i, p, q, _) in terms {
            dims = [dims[0].max(i + 1), dims[1].max(p + 1), dims[2].max(q + 1)];
        }
        let mut out = TriPoly::zeros(dims);
        for (i, p, q, c) in terms {
            let slot = out.slot(*i, *p, *q);
            out.coeffs[slot] = &out.coeffs[slot] + c;
        }
        out
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    fn slot(&self, i: usize, p: usize, q: usize) -> usize {
        (i * self.dims[1] + p) * self.dims[2] + q
    }

    pub fn get(&self, i: usize, p: usize, q: usize) -> Rational {
        if i < self.dims[0] && p < self.dims[1] && q < self.dims[2] {
            self.coeffs[self.slot(i, p, q)].clone()
        } else {
            Rational::zero()
        }
    }

    pub fn set(&mut self, i: usize, p: usize, q: usize, value: Rational) {
        let slot = self.slot(i, p, q);
        self.coeffs[slot] = value;
    }

    /// Fixes `t_r` and `t_c`, leaving a polynomial in `lambda`.
    pub fn eval_t(&self, t_r: &Rational, t_c: &Rational) -> UniPoly<Rational> {
        let tr = self.powers(t_r, self.dims[1]);
        let tc = self.powers(t_c, self.dims[2]);
        let mut out = Vec::with_capacity(self.dims[0]);
        for i in 0..self.dims[0] {
            let mut acc = Rational::zero();
            for (p, trp) in tr.iter().enumerate() {
                for (q, tcq) in tc.iter().enumerate() {
                    let c = &self.coeffs[self.slot(i, p, q)];
                    if !c.is_zero() {
                        acc += c * trp * tcq;
                    }
                }
            }
            out.push(acc);
        }
        UniPoly::new(out)
    }

    fn powers(&self, t: &Rational, n: usize) -> Vec<Rational> {
        let mut out = Vec::with_capacity(n);
        let mut cur = Rational::one();
        for _ in 0..n {
            out.push(cur.clone());
            cur *= t;
        }
        out
    }

    /// Highest power of `t_r` (axis 1) or `t_c` (axis 2) with a nonzero
    /// coefficient; `None` for the zero polynomial.
    pub fn degree_in(&self, axis: usize) -> Option<usize> {
        let mut best = None;
        for i in 0..self.dims[0] {
            for p in 0..self.dims[1] {
                for q in 0..self.dims[2] {
                    if !self.coeffs[self.slot(i, p, q)].is_zero() {
                        let d = [i, p, q][axis];
                        best = Some(best.map_or(d, |b: usize| b.max(d)));
                    }
                }
            }
        }
        best
    }

    fn zip(&self, rhs: &TriPoly, f: impl Fn(&Rational, &Rational) -> Rational) -> TriPoly {
        let dims = [0, 1, 2].map(|a| self.dims[a].max(rhs.dims[a]));
        let mut out = TriPoly::zeros(dims);
        for i in 0..dims[0] {
            for p in 0..dims[1] {
                for q in 0..dims[2] {
                    out.set(i, p, q, f(&self.get(i, p, q), &rhs.get(i, p, q)));
                }
            }
        }
        out
    }
}

impl Add for &TriPoly {
    type Output = TriPoly;
    fn add(self, rhs: &TriPoly) -> TriPoly {
        self.zip(rhs, |a, b| a + b)
    }
}

impl Sub for &TriPoly {
    type Output = TriPoly;
    fn sub(self, rhs: &TriPoly) -> TriPoly {
        self.zip(rhs, |a, b| a - b)
    }
}

impl Mul for &TriPoly {
    type Output = TriPoly;
    fn mul(self, rhs: &TriPoly) -> TriPoly {
        let dims = [0, 1, 2].map(|a| self.dims[a] + rhs.dims[a] - 1);
        let mut out = TriPoly::zeros(dims);
        for i in 0..self.dims[0] {
            for p in 0..self.dims[1] {
                for q in 0..self.dims[2] {
                    let a = &self.coeffs[self.slot(i, p, q)];
                    if a.is_zero() {
                        continue;
                    }
                    for j in 0..rhs.dims[0] {
                        for r in 0..rhs.dims[1] {
                            for s in 0..rhs.dims[2] {
                                let b = &rhs.coeffs[rhs.slot(j, r, s)];
                                let slot = out.slot(i + j, p + r, q + s);
                                out.coeffs[slot] = &out.coeffs[slot] + a * b;
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    #[test]
    fn partial_evaluation() {
        // lambda + t_r t_c
        let p = TriPoly::from_terms(&[(1, 0, 0, int(1)), (0, 1, 1, int(1))]);
        assert_eq!(p.eval_t(&int(2), &int(3)), UniPoly::from_i64s(&[6, 1]));
    }

    #[test]
    fn ring_operations() {
        let a = TriPoly::from_terms(&[(1, 0, 0, int(1)), (0, 1, 0, int(2))]);
        let b = TriPoly::from_terms(&[(0, 0, 1, int(1)), (0, 0, 0, int(-1))]);
        let prod = &a * &b;
        // (lambda + 2 t_r)(t_c - 1) at t_r = 1, t_c = 3 is 2 lambda + 4
        assert_eq!(prod.eval_t(&int(1), &int(3)), UniPoly::from_i64s(&[4, 2]));
        let sum = &a + &b;
        assert_eq!(sum.get(0, 0, 0), int(-1));
        assert_eq!((&sum - &b), TriPoly::from_terms(&[(1, 0, 0, int(1)), (0, 1, 0, int(2)), (0, 0, 1, int(0))]));
        assert_eq!(prod.degree_in(2), Some(1));
        assert_eq!(TriPoly::zeros([2, 2, 2]).degree_in(0), None);
    }
}
