//! Exact dense matrices and the determinant machinery behind the expected
//! characteristic polynomials.

mod charpoly;
mod householder;
mod trivariate;

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::algebra::{QuadNum, Rational, Scalar};
use crate::error::{Error, Result};

pub use householder::{householder_block_reduce, householder_matrix};
pub use trivariate::{lagrange_basis, trivariate_detpoly};

/// Dense row-major matrix over an exact ring.
#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn new(rows: usize, cols: usize, data: Vec<S>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| S::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    /// Square matrix from nested integer rows.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix::from_fn(rows.len(), cols, |i, j| S::from_i64(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<T: Scalar>(&self, f: impl FnMut(&S) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::<S>::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].add_ref(&a.mul_ref(b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Panicking product for shapes already known to agree.
    pub fn mul(&self, rhs: &Self) -> Self {
        self.try_mul(rhs).expect("matrix shapes agree")
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::Shape("cannot add matrices of different shapes".into()));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.add_ref(b)).collect(),
        })
    }

    /// Multiplies row `i` by `row_scale[i]` and column `j` by `col_scale[j]`.
    pub fn scale_rows_cols(&self, row_scale: &[S], col_scale: &[S]) -> Self {
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].mul_ref(&row_scale[i]).mul_ref(&col_scale[j])
        })
    }

    pub fn neg(&self) -> Self {
        self.map(S::neg_ref)
    }
}

impl Matrix<Rational> {
    pub fn to_quad(&self) -> Matrix<QuadNum> {
        self.map(|r| QuadNum::rational(r.clone()))
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

impl<S: Scalar> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Sub-block of a matrix given by matching lists of row and column positions
/// (0-based, strictly increasing).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BlockSpec {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl BlockSpec {
    pub fn new(mut rows: Vec<usize>, mut cols: Vec<usize>) -> Result<Self> {
        rows.sort_unstable();
        cols.sort_unstable();
        if rows.len() != cols.len() {
            return Err(Error::InvalidBlock(format!("{} rows but {} columns", rows.len(), cols.len())));
        }
        if rows.windows(2).any(|w| w[0] == w[1]) || cols.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidBlock("repeated index".into()));
        }
        Ok(BlockSpec { rows, cols })
    }

    pub fn empty() -> Self {
        BlockSpec::default()
    }

    /// The whole `n x n` index range.
    pub fn full(n: usize) -> Self {
        BlockSpec { rows: (0..n).collect(), cols: (0..n).collect() }
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    /// Number of rows (equal to the number of columns).
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn check_bounds(&self, rows: usize, cols: usize) -> Result<()> {
        if self.rows.last().is_some_and(|&r| r >= rows) || self.cols.last().is_some_and(|&c| c >= cols) {
            return Err(Error::InvalidBlock(format!("index out of range for a {rows}x{cols} matrix")));
        }
        Ok(())
    }

    pub fn contains_row(&self, i: usize) -> bool {
        self.rows.binary_search(&i).is_ok()
    }

    pub fn contains_col(&self, j: usize) -> bool {
        self.cols.binary_search(&j).is_ok()
    }
}
