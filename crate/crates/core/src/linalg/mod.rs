//! Dense exact linear algebra over the rationals.
//!
//! Elimination, inversion, rank factorization and Moore-Penrose
//! pseudoinverses. Two routes to `A⁺` exist: the block fast path for
//! matrices of shape `[[0, 0], [R, 0]]` and a general full-rank
//! factorization. They are independent and are cross-checked in tests.

mod elim;
mod pinv;

pub use elim::{invert, null_space, rank, rref};
pub use pinv::{
    detect_shell, penrose_check, pinv_general, pinv_shell, solve, solve_traced, PenroseReport,
    ShellShape, SolveRoute, TracedSolution,
};

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactnum::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {op} of {lhs:?} and {rhs:?}")]
    DimensionMismatch {
        op: &'static str,
        lhs: (usize, usize),
        rhs: (usize, usize),
    },
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("unsolvable: A·A⁺·b ≠ b")]
    Unsolvable,
}

/// Row-major dense rational matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds from row vectors. Panics if rows are ragged.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| crate::exactnum::int(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.row(i).iter().all(Zero::is_zero)
    }

    pub fn col_is_zero(&self, j: usize) -> bool {
        (0..self.rows).all(|i| self[(i, j)].is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "product",
                lhs: self.shape(),
                rhs: rhs.shape(),
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        if self.cols != v.len() {
            return Err(LinalgError::DimensionMismatch {
                op: "matrix-vector product",
                lhs: self.shape(),
                rhs: (v.len(), 1),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.shape() != rhs.shape() {
            return Err(LinalgError::DimensionMismatch {
                op: "sum",
                lhs: self.shape(),
                rhs: rhs.shape(),
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// Adds `c` to every diagonal entry (square only).
    pub fn add_scalar_identity(&mut self, c: &Rational) {
        debug_assert!(self.is_square());
        for i in 0..self.rows {
            self[(i, i)] += c;
        }
    }

    pub fn block(&self, row0: usize, col0: usize, rows: usize, cols: usize) -> Self {
        let mut b = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                b[(i, j)] = self[(row0 + i, col0 + j)].clone();
            }
        }
        b
    }

    pub fn set_block(&mut self, row0: usize, col0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(row0 + i, col0 + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        debug_assert!(self.is_square());
        (0..e).fold(Self::identity(self.rows), |acc, _| &acc * self)
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// Panics on incompatible shapes; use [`RatMatrix::checked_mul`] otherwise.
impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: Self) -> RatMatrix {
        self.checked_mul(rhs).expect("incompatible matrix shapes")
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{:>width$}", cells[i * self.cols + j])?;
            }
            f.write_str("]")?;
            if i + 1 < self.rows {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}
