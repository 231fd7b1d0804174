//! Exact expected characteristic polynomials of tree nodes.
//!
//! For a node with `r` matchings (the last possibly partial) the pipeline is:
//!
//! 1. Fixed edges `A` plus a uniformly random permutation on the block of
//!    unmatched vertices. The block mean is folded into `A`, a Householder
//!    change of basis moves the mean directions onto coordinate axes, and the
//!    mean-free part of the permutation is replaced by a Haar orthogonal
//!    matrix on the reduced block. The expectation of `det(y I - Z^T Z)` then
//!    depends only on the sums `C[k'][p][q]` of squared minors of the reduced
//!    matrix, read off the trivariate determinant polynomial.
//! 2. `y -> x^2` turns that into the adjacency characteristic polynomial.
//! 3. Each of the `d - r` remaining random matchings is a fixed linear map on
//!    coefficients.
//! 4. The trivial factor `x^2 - d^2` is divided out.

use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Serialize, Serializer};

use crate::algebra::{int, Rational, Scalar, TriPoly, UniPoly};
use crate::error::{Error, Result};
use crate::family::{half_adjacency, NodeState, Params};
use crate::linalg::{householder_block_reduce, trivariate_detpoly, BlockSpec, Matrix};

static C_CHECKED: AtomicU64 = AtomicU64::new(0);
static C_VIOLATIONS: AtomicU64 = AtomicU64::new(0);

/// Process-wide tally of extracted `C` values: `(checked, violations)`.
///
/// A violation (irrational or negative value) also aborts the computation
/// that produced it.
pub fn cancellation_stats() -> (u64, u64) {
    (C_CHECKED.load(Ordering::Relaxed), C_VIOLATIONS.load(Ordering::Relaxed))
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Weight of `C[k'][p][q]` in the expected sum of squared `k x k` minors:
/// `C(l-p, k-k') C(l-q, k-k') / C(l, k-k')` for a reduced block of dimension `l`.
pub fn g_weight(block_dim: usize, k: usize, k_prime: usize, p: usize, q: usize) -> Rational {
    assert!(k_prime <= k, "g_weight needs k' <= k");
    let (l, j) = (block_dim as i64, (k - k_prime) as i64);
    let den = binomial(l, j);
    if den == BigInt::from(0) {
        return int(0);
    }
    Rational::new(binomial(l - p as i64, j) * binomial(l - q as i64, j), den)
}

/// Squared-minor sums of the reduced matrix, split by how many rows (`p`)
/// and columns (`q`) of the minor fall inside the reduced block.
#[derive(Clone, Debug, PartialEq)]
pub struct CTensor {
    m: usize,
    block_dim: usize,
    values: TriPoly,
}

impl CTensor {
    /// Reads `C[k'][p][q]` off the coefficient of `lambda^(m-k') t_r^p t_c^q`.
    pub fn from_detpoly(detpoly: &TriPoly, m: usize, block_dim: usize) -> Result<Self> {
        let mut values = TriPoly::zeros([m + 1, block_dim + 1, block_dim + 1]);
        for k in 0..=m {
            for p in 0..=block_dim {
                for q in 0..=block_dim {
                    let c = detpoly.get(m - k, p, q);
                    C_CHECKED.fetch_add(1, Ordering::Relaxed);
                    if c.is_negative() {
                        C_VIOLATIONS.fetch_add(1, Ordering::Relaxed);
                        return Err(Error::NegativeCoefficient { k, p, q, value: c.to_string() });
                    }
                    values.set(k, p, q, c);
                }
            }
        }
        Ok(CTensor { m, block_dim, values })
    }

    pub fn get(&self, k_prime: usize, p: usize, q: usize) -> Rational {
        self.values.get(k_prime, p, q)
    }

    pub fn side(&self) -> usize {
        self.m
    }

    pub fn block_dim(&self) -> usize {
        self.block_dim
    }

    /// Expected sum of squared `k x k` minors of `A + Q`, `Q` Haar on the block.
    pub fn expected_minor_sum(&self, k: usize) -> Rational {
        let mut acc = int(0);
        for kp in 0..=k.min(self.m) {
            for p in 0..=self.block_dim.min(kp) {
                for q in 0..=self.block_dim.min(kp) {
                    let c = self.get(kp, p, q);
                    if !c.is_zero() {
                        acc += g_weight(self.block_dim, k, kp, p, q) * c;
                    }
                }
            }
        }
        acc
    }

    /// `sum_k (-1)^k S_k y^(m-k)`.
    pub fn expected_charpoly(&self) -> UniPoly<Rational> {
        let m = self.m;
        let mut coeffs = vec![int(0); m + 1];
        for k in 0..=m {
            let s = self.expected_minor_sum(k);
            coeffs[m - k] = if k % 2 == 0 { s } else { -s };
        }
        UniPoly::new(coeffs)
    }
}

impl Serialize for CTensor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        // values[k'][p][q] as "n/d" strings
        let nested: Vec<Vec<Vec<String>>> = (0..=self.m)
            .map(|k| {
                (0..=self.block_dim)
                    .map(|p| (0..=self.block_dim).map(|q| self.get(k, p, q).to_string()).collect())
                    .collect()
            })
            .collect();
        #[derive(Serialize)]
        struct Repr<'a> {
            m: usize,
            block_dim: usize,
            values: &'a Vec<Vec<Vec<String>>>,
        }
        Repr { m: self.m, block_dim: self.block_dim, values: &nested }.serialize(s)
    }
}

/// `det(y I - A^T A)`.
fn gram_charpoly(a: &Matrix<Rational>) -> UniPoly<Rational> {
    a.transpose().mul(a).charpoly()
}

/// The tensor of squared-minor sums for `A` plus a random permutation on a
/// block of size at least 2.
pub fn block_ctensor(a: &Matrix<Rational>, block: &BlockSpec) -> Result<CTensor> {
    let l = block.len();
    block.check_bounds(a.rows(), a.cols())?;
    let mut a_aug = a.clone();
    let mean = Rational::new(1.into(), l.into());
    for &i in block.rows() {
        for &j in block.cols() {
            a_aug[(i, j)] = &a_aug[(i, j)] + &mean;
        }
    }
    let (a_hat, reduced) = householder_block_reduce(&a_aug, block)?;
    let detpoly = trivariate_detpoly(&a_hat, &reduced).inspect_err(|e| {
        if matches!(e, Error::IrrationalCoefficient { .. }) {
            C_VIOLATIONS.fetch_add(1, Ordering::Relaxed);
        }
    })?;
    CTensor::from_detpoly(&detpoly, a.rows(), reduced.len())
}

/// `E[det(y I - (A + P)^T (A + P))]` for `P` a uniformly random permutation
/// matrix supported on `block` (zero elsewhere).
pub fn fixed_plus_random_block_expected(a: &Matrix<Rational>, block: &BlockSpec) -> Result<UniPoly<Rational>> {
    if !a.is_square() {
        return Err(Error::Shape("fixed part must be square".into()));
    }
    block.check_bounds(a.rows(), a.cols())?;
    match block.len() {
        0 => Ok(gram_charpoly(a)),
        1 => {
            let mut forced = a.clone();
            let (i, j) = (block.rows()[0], block.cols()[0]);
            forced[(i, j)] = &forced[(i, j)] + int(1);
            Ok(gram_charpoly(&forced))
        }
        _ => Ok(block_ctensor(a, block)?.expected_charpoly()),
    }
}

/// Expected adjacency characteristic polynomial after adding one uniformly
/// random perfect matching to a (random) `c`-regular bipartite multigraph on
/// `n = 2m` vertices whose expected adjacency characteristic polynomial is
/// `p_adj`.
///
/// The all-ones singular direction carries `c^2` before and `(c+1)^2` after;
/// on its complement the new matching acts as a Haar rotation on the whole
/// `(m-1)`-dimensional space, where every minor overlaps the block fully.
pub fn add_random_matching(p_adj: &UniPoly<Rational>, params: &Params, c: usize) -> Result<UniPoly<Rational>> {
    let m = params.m();
    if p_adj.degree() != Some(2 * m) || !p_adj.is_even() {
        return Err(Error::InvalidParams(format!(
            "expected an even polynomial of degree {}, got {p_adj}",
            2 * m
        )));
    }
    let gram = p_adj.even_part();
    let c2 = int((c * c) as i64);
    let reduced = gram.div_exact(&UniPoly::linear_root(&c2))?;
    let dim = m - 1;
    // reduced(y) = sum_k (-1)^k C_k y^(dim - k)
    let minor_sums: Vec<Rational> = (0..=dim)
        .map(|k| {
            let coeff = reduced.coeff(dim - k);
            if k % 2 == 0 {
                coeff
            } else {
                -coeff
            }
        })
        .collect();
    let mut coeffs = vec![int(0); dim + 1];
    for k in 0..=dim {
        let mut s = int(0);
        for (kp, ck) in minor_sums.iter().enumerate().take(k + 1) {
            if !ck.is_zero() {
                s += g_weight(dim, k, kp, kp, kp) * ck;
            }
        }
        coeffs[dim - k] = if k % 2 == 0 { s } else { -s };
    }
    let c1 = int(((c + 1) * (c + 1)) as i64);
    let grown = &UniPoly::new(coeffs) * &UniPoly::linear_root(&c1);
    Ok(grown.substitute_square())
}

/// Expected adjacency characteristic polynomial of the node's distribution,
/// before dividing out `x^2 - d^2`.
pub fn expected_adjacency_charpoly(node: &NodeState, params: &Params) -> Result<UniPoly<Rational>> {
    let (a, block) = half_adjacency(node, params)?;
    let gram = fixed_plus_random_block_expected(&a, &block)?;
    let mut p = gram.substitute_square();
    let drawn = if node.partial.is_some() || node.complete.len() < params.d {
        node.complete.len() + 1
    } else {
        node.complete.len()
    };
    for c in drawn..params.d {
        p = add_random_matching(&p, params, c)?;
    }
    debug_assert_eq!(p.degree(), Some(params.n));
    Ok(p)
}

/// The polynomial assigned to a node: its expected adjacency characteristic
/// polynomial with the trivial eigenvalues `+-d` removed. Monic, even, of
/// degree `n - 2`.
pub fn node_polynomial(node: &NodeState, params: &Params) -> Result<UniPoly<Rational>> {
    let p = expected_adjacency_charpoly(node, params)?;
    let out = p.div_exact(&UniPoly::trivial_factor(params.d as u64))?;
    debug_assert!(out.is_monic() && out.is_even());
    Ok(out)
}

/// The tensor behind a node's polynomial, when the node has a random block of
/// size at least 2.
pub fn node_ctensor(node: &NodeState, params: &Params) -> Result<Option<CTensor>> {
    let (a, block) = half_adjacency(node, params)?;
    if block.len() < 2 {
        return Ok(None);
    }
    block_ctensor(&a, &block).map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = UniPoly<Rational>;

    fn params(n: usize, d: usize) -> Params {
        Params::new(n, d).unwrap()
    }

    fn node(complete: &[&[usize]], partial: Option<&[usize]>) -> NodeState {
        NodeState { complete: complete.iter().map(|c| c.to_vec()).collect(), partial: partial.map(<[usize]>::to_vec) }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 4), BigInt::from(0));
        assert_eq!(binomial(3, -1), BigInt::from(0));
        assert_eq!(binomial(0, 0), BigInt::from(1));
    }

    #[test]
    fn g_weight_examples() {
        for (l, k, p, q) in [(3, 2, 0, 1), (4, 1, 1, 1), (0, 0, 0, 0)] {
            assert_eq!(g_weight(l, k, k, p, q), int(1));
        }
        assert_eq!(g_weight(3, 2, 1, 1, 1), Rational::new(4.into(), 3.into()));
        assert_eq!(g_weight(1, 1, 0, 0, 0), int(1));
        assert_eq!(g_weight(1, 3, 0, 0, 0), int(0));
    }

    #[test]
    fn fixed_plus_random_examples() {
        let full = BlockSpec::full(2);
        assert_eq!(fixed_plus_random_block_expected(&Matrix::zeros(2, 2), &full).unwrap(), P::from_i64s(&[1, -2, 1]));
        assert_eq!(fixed_plus_random_block_expected(&Matrix::identity(2), &full).unwrap(), P::from_i64s(&[8, -6, 1]));
        let a = Matrix::from_i64_rows(&[&[1, 1], &[0, 1]]);
        let block = BlockSpec::new(vec![1], vec![0]).unwrap();
        assert_eq!(fixed_plus_random_block_expected(&a, &block).unwrap(), P::from_i64s(&[0, -4, 1]));
        let a = Matrix::from_i64_rows(&[&[2, 1], &[1, 2]]);
        assert_eq!(fixed_plus_random_block_expected(&a, &BlockSpec::empty()).unwrap(), a.transpose().mul(&a).charpoly());
    }

    #[test]
    fn ctensor_of_identity_plus_random() {
        let t = block_ctensor(&Matrix::identity(2), &BlockSpec::full(2)).unwrap();
        assert_eq!(t.get(0, 0, 0), int(1));
        assert_eq!(t.get(1, 0, 0), int(4));
        assert_eq!(t.get(1, 1, 1), int(1));
        assert_eq!(t.get(2, 1, 1), int(4));
        assert_eq!(t.get(1, 1, 0), int(0));
        let json = serde_json::to_value(&t).unwrap();
        assert_eq!(json["values"][2][1][1], "4");
    }

    #[test]
    fn add_random_matching_examples() {
        assert_eq!(add_random_matching(&P::from_i64s(&[0, 0, 0, 0, 1]), &params(4, 3), 0).unwrap(), P::from_i64s(&[1, 0, -2, 0, 1]));
        assert_eq!(add_random_matching(&P::from_i64s(&[1, 0, -2, 0, 1]), &params(4, 3), 1).unwrap(), P::from_i64s(&[8, 0, -6, 0, 1]));
        assert_eq!(add_random_matching(&P::from_i64s(&[-4, 0, 1]), &params(2, 3), 2).unwrap(), P::from_i64s(&[-9, 0, 1]));
        assert!(matches!(add_random_matching(&P::from_i64s(&[-1, 0, 1]), &params(2, 3), 2), Err(Error::NonzeroRemainder)));
        assert!(add_random_matching(&P::from_i64s(&[0, 1, 0, 0, 1]), &params(4, 3), 1).is_err());
    }

    #[test]
    fn node_polynomial_examples() {
        let p43 = params(4, 3);
        assert_eq!(node_polynomial(&NodeState::root(), &p43).unwrap(), P::from_i64s(&[-3, 0, 1]));
        assert_eq!(node_polynomial(&node(&[&[0, 1], &[0, 1]], None), &p43).unwrap(), P::from_i64s(&[-5, 0, 1]));
        assert_eq!(node_polynomial(&node(&[&[0, 1], &[0, 1], &[1, 0]], None), &p43).unwrap(), P::from_i64s(&[-1, 0, 1]));
        assert_eq!(node_polynomial(&NodeState::root(), &params(2, 3)).unwrap(), P::one());
    }

    #[test]
    fn node_ctensor_only_for_real_blocks() {
        let p43 = params(4, 3);
        assert!(node_ctensor(&NodeState::root(), &p43).unwrap().is_some());
        assert!(node_ctensor(&node(&[], Some(&[0])), &p43).unwrap().is_none());
    }
}
