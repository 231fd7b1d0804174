use super::Matrix;
use crate::algebra::{Scalar, UniPoly};

impl<S: Scalar> Matrix<S> {
    /// `det(xI - M)` by Berkowitz's division-free recurrence.
    ///
    /// Works over any commutative ring, so the same routine serves rationals
    /// and `Q[sqrt(l)]`. For the leading `(r+1) x (r+1)` block split as
    /// `[[S, C], [R, a]]`, the characteristic polynomial is the product of a
    /// lower-triangular Toeplitz matrix with first column
    /// `(1, -a, -R C, -R S C, ..., -R S^(r-1) C)` and the previous one.
    pub fn charpoly(&self) -> UniPoly<S> {
        assert!(self.is_square(), "charpoly of a non-square matrix");
        let n = self.rows();
        // Descending coefficients, leading 1 first.
        let mut poly = vec![S::one()];
        for r in 0..n {
            let mut toeplitz = Vec::with_capacity(r + 2);
            toeplitz.push(S::one());
            toeplitz.push(self[(r, r)].neg_ref());
            // v = S^k C, starting at C = column r above the diagonal.
            let mut v: Vec<S> = (0..r).map(|i| self[(i, r)].clone()).collect();
            for _ in 0..r {
                let rv = (0..r).fold(S::zero(), |acc, j| acc.add_ref(&self[(r, j)].mul_ref(&v[j])));
                toeplitz.push(rv.neg_ref());
                v = (0..r)
                    .map(|i| (0..r).fold(S::zero(), |acc, j| acc.add_ref(&self[(i, j)].mul_ref(&v[j]))))
                    .collect();
            }
            let mut next = vec![S::zero(); r + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                for (j, pj) in poly.iter().enumerate().take(i + 1) {
                    if !pj.is_zero() && !toeplitz[i - j].is_zero() {
                        *slot = slot.add_ref(&toeplitz[i - j].mul_ref(pj));
                    }
                }
            }
            poly = next;
        }
        poly.reverse();
        UniPoly::new(poly)
    }

    pub fn det(&self) -> S {
        let c0 = self.charpoly().coeff(0);
        if self.rows().is_multiple_of(2) {
            c0
        } else {
            c0.neg_ref()
        }
    }
}
