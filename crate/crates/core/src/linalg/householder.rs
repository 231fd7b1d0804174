use super::{BlockSpec, Matrix};
use crate::algebra::{FieldScalar, QuadNum, Rational, Scalar};
use crate::error::{Error, Result};

/// Orthogonal `size x size` reflection taking the normalized all-ones vector
/// on `indices` to the unit vector at `indices[0]`, identity elsewhere.
///
/// Entries live in `Q[sqrt(l)]` with `l = indices.len()`. The matrix is
/// symmetric and its own inverse.
pub fn householder_matrix(size: usize, indices: &[usize]) -> Result<Matrix<QuadNum>> {
    let l = indices.len();
    if l < 2 {
        return Err(Error::BlockTooSmall(l));
    }
    let l64 = l as u64;
    // u = 1_B / sqrt(l) = (sqrt(l) / l) 1_B
    let inv_sqrt = QuadNum::new(Rational::zero(), Rational::new(1.into(), l.into()), l64);
    let pivot = indices[0];
    let mut w = vec![QuadNum::zero(); size];
    for &i in indices {
        w[i] = inv_sqrt.clone();
    }
    w[pivot] = w[pivot].sub_ref(&QuadNum::one());
    let norm2 = w.iter().fold(QuadNum::zero(), |acc, x| acc.add_ref(&x.mul_ref(x)));
    let two = QuadNum::from_i64(2);
    let factor = two.mul_ref(&norm2.inv().expect("w is nonzero for l >= 2"));
    Ok(Matrix::from_fn(size, size, |i, j| {
        let id = if i == j { QuadNum::one() } else { QuadNum::zero() };
        if w[i].is_zero() || w[j].is_zero() {
            id
        } else {
            id.sub_ref(&factor.mul_ref(&w[i]).mul_ref(&w[j]))
        }
    }))
}

/// Rotates the block's all-ones directions onto coordinate axes.
///
/// `a_aug` must already contain the block mean (`1/l` added to every block
/// cell). Returns `H_r a_aug H_c^T` over `Q[sqrt(l)]` and the reduced block:
/// the original block minus its smallest row and smallest column, which now
/// carry the mean direction.
pub fn householder_block_reduce(
    a_aug: &Matrix<Rational>,
    block: &BlockSpec,
) -> Result<(Matrix<QuadNum>, BlockSpec)> {
    let l = block.len();
    if l < 2 {
        return Err(Error::BlockTooSmall(l));
    }
    block.check_bounds(a_aug.rows(), a_aug.cols())?;
    let h_r = householder_matrix(a_aug.rows(), block.rows())?;
    let h_c = householder_matrix(a_aug.cols(), block.cols())?;
    let reduced = h_r.mul(&a_aug.to_quad()).mul(&h_c.transpose());
    let reduced_block = BlockSpec::new(block.rows()[1..].to_vec(), block.cols()[1..].to_vec())?;

    #[cfg(debug_assertions)]
    {
        let before = a_aug.transpose().mul(a_aug).charpoly().to_quad();
        let after = reduced.transpose().mul(&reduced).charpoly();
        assert_eq!(before, after, "Householder reduction changed the singular values");
    }

    Ok((reduced, reduced_block))
}
