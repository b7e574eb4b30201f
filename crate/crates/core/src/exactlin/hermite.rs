use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;
use crate::error::{Error, Result};

/// Column-style Hermite basis `B · C = H`.
///
/// `H` is upper triangular with positive diagonal, and every entry right of
/// the diagonal in row `i` lies in `[0, H_ii)`. Coset normal forms below
/// depend on this convention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteBasis {
    pub h: IntMatrix,
    pub c: IntMatrix,
}

pub fn hermite(b: &IntMatrix) -> Result<HermiteBasis> {
    if !b.is_square() {
        return Err(Error::NotSquare { rows: b.rows(), cols: b.cols() });
    }
    let n = b.rows();
    let mut h = b.clone();
    let mut c = IntMatrix::identity(n);

    for i in (0..n).rev() {
        // gather the gcd of row i (columns 0..=i) into column i
        for j in 0..i {
            if h[(i, j)].is_zero() {
                continue;
            }
            let x = h[(i, j)].clone();
            let y = h[(i, i)].clone();
            let eg = x.extended_gcd(&y);
            let (g, p, q) = (eg.gcd, eg.x, eg.y);
            let ry = -(&y / &g);
            let rx = &x / &g;
            // new col_i = p*col_j + q*col_i ; new col_j = -(y/g)*col_j + (x/g)*col_i
            h.combine_cols(j, i, [&ry, &rx, &p, &q]);
            c.combine_cols(j, i, [&ry, &rx, &p, &q]);
        }
        if h[(i, i)].is_zero() {
            return Err(Error::SingularMatrix);
        }
        if h[(i, i)].is_negative() {
            h.negate_col(i);
            c.negate_col(i);
        }
        let d = h[(i, i)].clone();
        for j in i + 1..n {
            let q = h[(i, j)].div_floor(&d);
            if !q.is_zero() {
                let mq = -q;
                h.add_col_multiple(j, i, &mq);
                c.add_col_multiple(j, i, &mq);
            }
        }
    }
    Ok(HermiteBasis { h, c })
}

impl HermiteBasis {
    pub fn dim(&self) -> usize {
        self.h.rows()
    }

    /// |det H|, the index of the lattice.
    pub fn index(&self) -> BigInt {
        self.h.diagonal().iter().product()
    }

    /// Unique representative of `v` modulo the lattice with `0 <= w_i < H_ii`,
    /// reduced from the last coordinate upward.
    pub fn normal_form(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.dim(), "vector length must match lattice dimension");
        let mut w = v.to_vec();
        for i in (0..self.dim()).rev() {
            let q = w[i].div_floor(&self.h[(i, i)]);
            if q.is_zero() {
                continue;
            }
            for (r, wr) in w.iter_mut().enumerate().take(i + 1) {
                *wr -= &q * &self.h[(r, i)];
            }
        }
        w
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.normal_form(v).iter().all(Zero::is_zero)
    }

    /// All coset representatives in normal form, lexicographic in
    /// (w_0, w_1, ...) with the last coordinate varying fastest.
    pub fn cosets(&self) -> Vec<Vec<BigInt>> {
        let diag = self.h.diagonal();
        let mut out = vec![Vec::with_capacity(diag.len())];
        for d in &diag {
            let mut next = Vec::new();
            for prefix in &out {
                let mut k = BigInt::zero();
                while &k < d {
                    let mut w = prefix.clone();
                    w.push(k.clone());
                    next.push(w);
                    k += BigInt::one();
                }
            }
            out = next;
        }
        out
    }
}

pub fn coset_normal_form(v: &[BigInt], basis: &HermiteBasis) -> Vec<BigInt> {
    basis.normal_form(v)
}

pub fn coset_enumerate(basis: &HermiteBasis) -> Vec<Vec<BigInt>> {
    basis.cosets()
}
