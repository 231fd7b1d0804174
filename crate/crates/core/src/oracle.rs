//! Brute-force expected characteristic polynomials by exhaustive enumeration.
//!
//! Ground truth for tests and the `oracle` subcommand. Shares nothing with the
//! fast path beyond the scalar and polynomial types: adjacency assembly and
//! the characteristic polynomial (Faddeev-LeVerrier here, Berkowitz there)
//! are separate implementations.

use std::collections::HashMap;

use itertools::Itertools;
use num_bigint::BigInt;
use rayon::prelude::*;

use crate::algebra::{int, Rational, UniPoly};
use crate::error::{Error, Result};
use crate::family::{NodeState, Params};
use crate::linalg::{BlockSpec, Matrix};

pub const DEFAULT_CAP: u128 = 1_000_000;

type Dense = Vec<Vec<Rational>>;

/// `det(xI - M)` by the Faddeev-LeVerrier recurrence.
fn leverrier(m: &Dense) -> UniPoly<Rational> {
    let n = m.len();
    let matmul = |a: &Dense, b: &Dense| -> Dense {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(int(0), |acc, k| acc + &a[i][k] * &b[k][j]))
                    .collect()
            })
            .collect()
    };
    // descending: coeffs[k] multiplies x^(n-k)
    let mut coeffs = vec![int(1)];
    let mut aux: Dense = vec![vec![int(0); n]; n];
    for k in 1..=n {
        // aux = M * aux_prev + c_{k-1} I
        let mut next = matmul(m, &aux);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[k - 1];
        }
        aux = next;
        let prod = matmul(m, &aux);
        let trace = (0..n).fold(int(0), |acc, i| acc + &prod[i][i]);
        coeffs.push(-trace / int(k as i64));
    }
    coeffs.reverse();
    UniPoly::new(coeffs)
}

fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

/// Expected adjacency characteristic polynomial (degree `n`, trivial factor
/// included) of a node's distribution, by enumerating every completion of
/// the partial matching and every choice of the remaining matchings.
pub fn brute_expected_charpoly(node: &NodeState, params: &Params, cap: u128) -> Result<UniPoly<Rational>> {
    node.validate(params)?;
    let m = params.m();
    let t = node.partial.as_ref().map_or(0, Vec::len);
    let free_matchings = params.d - node.matching_count();
    let partial_ways = if node.partial.is_some() { factorial(m - t) } else { 1 };
    let size = factorial(m)
        .checked_pow(free_matchings as u32)
        .and_then(|x| x.checked_mul(partial_ways))
        .unwrap_or(u128::MAX);
    if size > cap {
        return Err(Error::TooLarge { size, cap });
    }

    // Multiset of multiplicity matrices (flattened m x m), with counts.
    let mut fixed = vec![0u32; m * m];
    for perm in &node.complete {
        for (i, &j) in perm.iter().enumerate() {
            fixed[i * m + j] += 1;
        }
    }
    let mut dist: HashMap<Vec<u32>, u64> = HashMap::from([(fixed, 1)]);
    if let Some(p) = &node.partial {
        let free: Vec<usize> = (0..m).filter(|j| !p.contains(j)).collect();
        let mut next = HashMap::new();
        for (mat, count) in &dist {
            for rest in free.iter().copied().permutations(free.len()) {
                let mut g = mat.clone();
                for (i, &j) in p.iter().chain(&rest).enumerate() {
                    g[i * m + j] += 1;
                }
                *next.entry(g).or_insert(0) += count;
            }
        }
        dist = next;
    }
    let all_perms: Vec<Vec<usize>> = (0..m).permutations(m).collect();
    for _ in 0..free_matchings {
        let mut next = HashMap::new();
        for (mat, count) in &dist {
            for perm in &all_perms {
                let mut g = mat.clone();
                for (i, &j) in perm.iter().enumerate() {
                    g[i * m + j] += 1;
                }
                *next.entry(g).or_insert(0) += count;
            }
        }
        dist = next;
    }

    let mut entries: Vec<(Vec<u32>, u64)> = dist.into_iter().collect();
    entries.sort();
    let total: u64 = entries.iter().map(|(_, c)| c).sum();
    let n = params.n;
    let sum = entries
        .par_iter()
        .map(|(mat, count)| {
            let adj: Dense = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i < m && j >= m {
                                int(mat[i * m + (j - m)] as i64)
                            } else if i >= m && j < m {
                                int(mat[j * m + (i - m)] as i64)
                            } else {
                                int(0)
                            }
                        })
                        .collect()
                })
                .collect();
            leverrier(&adj).scale(&Rational::from_integer(BigInt::from(*count)))
        })
        .reduce(UniPoly::zero, |a, b| &a + &b);
    Ok(sum.scale(&Rational::new(BigInt::from(1), BigInt::from(total))))
}

/// Average of `det(yI - (A + P)^T (A + P))` over all permutation matrices `P`
/// placed on `block`.
pub fn brute_fixed_plus_permutation(a: &Matrix<Rational>, block: &BlockSpec, cap: u128) -> Result<UniPoly<Rational>> {
    block.check_bounds(a.rows(), a.cols())?;
    let l = block.len();
    let size = factorial(l);
    if size > cap {
        return Err(Error::TooLarge { size, cap });
    }
    let (rows, cols) = (a.rows(), a.cols());
    let sum = (0..l)
        .permutations(l)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|perm| {
            let mut z: Dense = (0..rows).map(|i| (0..cols).map(|j| a[(i, j)].clone()).collect()).collect();
            for (k, &pk) in perm.iter().enumerate() {
                let (i, j) = (block.rows()[k], block.cols()[pk]);
                z[i][j] += int(1);
            }
            let gram: Dense = (0..cols)
                .map(|i| (0..cols).map(|j| (0..rows).fold(int(0), |acc, r| acc + &z[r][i] * &z[r][j])).collect())
                .collect();
            leverrier(&gram)
        })
        .reduce(UniPoly::zero, |a, b| &a + &b);
    Ok(sum.scale(&Rational::new(BigInt::from(1), BigInt::from(size))))
}
