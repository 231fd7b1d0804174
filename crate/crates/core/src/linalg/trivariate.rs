use rayon::prelude::*;

use super::{BlockSpec, Matrix};
use crate::algebra::{int, QuadNum, Rational, Scalar, TriPoly, UniPoly};
use crate::error::{Error, Result};

/// Lagrange basis polynomials for the nodes `0, 1, ..., count - 1`.
pub fn lagrange_basis(count: usize) -> Vec<UniPoly<Rational>> {
    (0..count)
        .map(|j| {
            let mut basis = UniPoly::one();
            let mut denom = int(1);
            for i in (0..count).filter(|&i| i != j) {
                basis = &basis * &UniPoly::linear_root(&int(i as i64));
                denom *= int(j as i64 - i as i64);
            }
            basis.scale(&denom.recip())
        })
        .collect()
}

/// `det(lambda I + A^T T_r A T_c)` as a polynomial in `lambda`, where `T_r`
/// (`T_c`) is the identity with `t_r` (`t_c`) on the block rows (columns).
fn detpoly_at(a_hat: &Matrix<QuadNum>, block: &BlockSpec, t_r: i64, t_c: i64) -> UniPoly<QuadNum> {
    let m = a_hat.rows();
    let weights = |inside: &dyn Fn(usize) -> bool, t: i64| -> Vec<QuadNum> {
        (0..m).map(|i| if inside(i) { QuadNum::from_i64(t) } else { QuadNum::one() }).collect()
    };
    let w_r = weights(&|i| block.contains_row(i), t_r);
    let w_c = weights(&|j| block.contains_col(j), t_c);
    let ones = vec![QuadNum::one(); a_hat.cols()];
    let scaled = a_hat.scale_rows_cols(&w_r, &ones);
    let x = a_hat.transpose().mul(&scaled).scale_rows_cols(&vec![QuadNum::one(); m], &w_c);
    // det(lambda I + X) = det(lambda I - (-X))
    x.neg().charpoly()
}

/// The trivariate determinant polynomial
/// `P(lambda, t_r, t_c) = det(A^T T_r A T_c + lambda I)` of a square `A` over
/// `Q[sqrt(l)]`, reconstructed by exact Lagrange interpolation from the
/// integer grid `{0..=l}^2` where `l` is the reduced block dimension.
///
/// The coefficient of `lambda^(m-k) t_r^p t_c^q` is the sum of squared
/// `k x k` minors of `A` whose rows meet the block in `p` places and columns
/// in `q`. Those sums are rational even though `A` is not; any leftover
/// `sqrt(l)` part is reported as [`Error::IrrationalCoefficient`].
pub fn trivariate_detpoly(a_hat: &Matrix<QuadNum>, reduced: &BlockSpec) -> Result<TriPoly> {
    if !a_hat.is_square() {
        return Err(Error::Shape("trivariate determinant needs a square matrix".into()));
    }
    reduced.check_bounds(a_hat.rows(), a_hat.cols())?;
    let m = a_hat.rows();
    let nodes = reduced.len() + 1;

    let grid: Vec<(usize, usize)> = (0..nodes).flat_map(|i| (0..nodes).map(move |j| (i, j))).collect();
    let values: Vec<UniPoly<QuadNum>> = grid
        .par_iter()
        .map(|&(i, j)| detpoly_at(a_hat, reduced, i as i64, j as i64))
        .collect();

    let basis: Vec<Vec<QuadNum>> = lagrange_basis(nodes)
        .iter()
        .map(|b| (0..nodes).map(|p| QuadNum::rational(b.coeff(p))).collect())
        .collect();

    let mut out = TriPoly::zeros([m + 1, nodes, nodes]);
    for k in 0..=m {
        for p in 0..nodes {
            for q in 0..nodes {
                let mut acc = QuadNum::zero();
                for (&(i, j), value) in grid.iter().zip(&values) {
                    let v = value.coeff(k);
                    if v.is_zero() || basis[i][p].is_zero() || basis[j][q].is_zero() {
                        continue;
                    }
                    acc = acc.add_ref(&v.mul_ref(&basis[i][p]).mul_ref(&basis[j][q]));
                }
                let value = acc.to_rational().ok_or_else(|| Error::IrrationalCoefficient {
                    k: m - k,
                    p,
                    q,
                    value: acc.to_string(),
                })?;
                out.set(k, p, q, value);
            }
        }
    }
    Ok(out)
}
