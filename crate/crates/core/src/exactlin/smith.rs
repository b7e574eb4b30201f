use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;
use crate::error::{Error, Result};

/// `U · B · V = D` with `U`, `V` unimodular and `D` diagonal, positive,
/// each diagonal entry dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
}

impl SmithDecomposition {
    pub fn diagonal(&self) -> Vec<BigInt> {
        self.d.diagonal()
    }
}

/// Smith normal form of a nonsingular square matrix.
///
/// Pivots are chosen as the entry of smallest nonzero magnitude in the
/// active block; ties go to the lowest row, then the lowest column.
pub fn smith(b: &IntMatrix) -> Result<SmithDecomposition> {
    if !b.is_square() {
        return Err(Error::NotSquare { rows: b.rows(), cols: b.cols() });
    }
    if b.determinant()?.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let n = b.rows();
    let mut a = b.clone();
    let mut u = IntMatrix::identity(n);
    let mut v = IntMatrix::identity(n);

    for t in 0..n {
        loop {
            let (pi, pj) = smallest_pivot(&a, t).ok_or(Error::SingularMatrix)?;
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..n {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&a[(i, t)] / &a[(t, t)]);
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&a[(t, j)] / &a[(t, t)]);
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // pivot must divide the rest of the active block
            let p = a[(t, t)].clone();
            let bad = (t + 1..n).find(|&i| (t + 1..n).any(|j| !a[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let one = BigInt::from(1);
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    Ok(SmithDecomposition { u, v, d: a })
}

fn smallest_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let n = a.rows();
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..n {
        for j in t..n {
            let x = a[(i, j)].abs();
            if x.is_zero() {
                continue;
            }
            if best.as_ref().map_or(true, |(_, _, b)| x < *b) {
                best = Some((i, j, x));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn check(b: &IntMatrix) -> SmithDecomposition {
        let s = smith(b).unwrap();
        assert_eq!(&(&s.u * b) * &s.v, s.d);
        assert!(s.d.is_diagonal());
        assert!(s.u.determinant().unwrap().abs().is_one());
        assert!(s.v.determinant().unwrap().abs().is_one());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        let prod: BigInt = diag.iter().product();
        assert_eq!(prod, b.determinant().unwrap().abs());
        s
    }

    #[test]
    fn scalar_cases() {
        let s = check(&IntMatrix::from_rows(&[vec![7]]));
        assert_eq!(s.d, IntMatrix::from_rows(&[vec![7]]));
        assert_eq!(s.u, IntMatrix::identity(1));
        assert_eq!(s.v, IntMatrix::identity(1));
        let s = check(&IntMatrix::from_rows(&[vec![1]]));
        assert_eq!(s.d, IntMatrix::identity(1));
        let s = check(&IntMatrix::from_rows(&[vec![-5]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(5)]);
    }

    #[test]
    fn two_by_two() {
        let s = check(&IntMatrix::from_rows(&[vec![4, 1], vec![1, 2]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(7)]);
        let s = check(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
        let s = check(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 4]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn larger_and_indefinite() {
        check(&IntMatrix::from_rows(&[vec![-2, 1, 0], vec![1, -3, 1], vec![0, 1, 5]]));
        check(&IntMatrix::from_rows(&[vec![6, 4, 2], vec![4, 6, 4], vec![2, 4, 6]]));
        check(&IntMatrix::from_rows(&[vec![0, 3], vec![3, 0]]));
    }

    #[test]
    fn singular_rejected() {
        assert_eq!(smith(&IntMatrix::from_rows(&[vec![0]])), Err(Error::SingularMatrix));
        assert_eq!(
            smith(&IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]])),
            Err(Error::SingularMatrix)
        );
    }
}
