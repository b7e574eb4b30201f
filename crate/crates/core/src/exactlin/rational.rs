use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::IntMatrix;
use crate::error::{Error, Result};

/// Dense matrix of exact rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul_int_vec(&self, v: &[BigInt]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(BigRational::zero(), |acc, j| {
                    acc + &self[(i, j)] * BigRational::from_integer(v[j].clone())
                })
            })
            .collect()
    }

    /// `xᵀ · self · y` for integer vectors.
    pub fn bilinear(&self, x: &[BigInt], y: &[BigInt]) -> BigRational {
        let my = self.mul_int_vec(y);
        x.iter()
            .zip(&my)
            .fold(BigRational::zero(), |acc, (a, b)| acc + b * BigRational::from_integer(a.clone()))
    }

    pub fn is_identity(&self) -> bool {
        (0..self.rows).all(|i| {
            (0..self.cols).all(|j| {
                let e = &self[(i, j)];
                if i == j {
                    e.is_one()
                } else {
                    e.is_zero()
                }
            })
        })
    }

    pub fn mul_int(&self, rhs: &IntMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows());
        let mut out = RatMatrix::zeros(self.rows, rhs.cols());
        for i in 0..self.rows {
            for k in 0..self.cols {
                for j in 0..rhs.cols() {
                    let v = &self[(i, k)] * BigRational::from_integer(rhs[(k, j)].clone());
                    out[(i, j)] += v;
                }
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

/// Exact inverse over Q by Gauss-Jordan elimination.
pub fn inverse_rational(b: &IntMatrix) -> Result<RatMatrix> {
    if !b.is_square() {
        return Err(Error::NotSquare { rows: b.rows(), cols: b.cols() });
    }
    let n = b.rows();
    let mut a = RatMatrix::zeros(n, n);
    let mut inv = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = BigRational::from_integer(b[(i, j)].clone());
        }
        inv[(i, i)] = BigRational::one();
    }
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[(r, col)].is_zero()).ok_or(Error::SingularMatrix)?;
        if pivot != col {
            for j in 0..n {
                a.data.swap(pivot * n + j, col * n + j);
                inv.data.swap(pivot * n + j, col * n + j);
            }
        }
        let p = a[(col, col)].clone();
        for j in 0..n {
            a[(col, j)] = &a[(col, j)] / &p;
            inv[(col, j)] = &inv[(col, j)] / &p;
        }
        for r in 0..n {
            if r == col || a[(r, col)].is_zero() {
                continue;
            }
            let f = a[(r, col)].clone();
            for j in 0..n {
                let da = &f * &a[(col, j)];
                let di = &f * &inv[(col, j)];
                a[(r, j)] -= da;
                inv[(r, j)] -= di;
            }
        }
    }
    Ok(inv)
}
