//! Shared generators and independent oracles for the integration tests.
#![allow(dead_code)]

use std::f64::consts::TAU;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use rhs_quad::{HomologyGroup, QmodZ, SpincSet, SurgeryPresentation};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| x.into()).collect()
}

pub fn set_of(rows: &[Vec<i64>]) -> SpincSet {
    let p = SurgeryPresentation::from_rows(rows).unwrap();
    SpincSet::new(Arc::new(HomologyGroup::new(p).unwrap())).unwrap()
}

/// Nonzero framing in `[-9, 9]`.
pub fn framing(rng: &mut ChaCha8Rng) -> i64 {
    let v = rng.gen_range(1..=9);
    if rng.gen_bool(0.5) {
        v
    } else {
        -v
    }
}

pub fn random_diagonal(rng: &mut ChaCha8Rng, max_n: usize) -> Vec<Vec<i64>> {
    let n = rng.gen_range(1..=max_n);
    let f: Vec<i64> = (0..n).map(|_| framing(rng)).collect();
    (0..n).map(|i| (0..n).map(|j| if i == j { f[i] } else { 0 }).collect()).collect()
}

/// Random symmetric matrix with `0 < |det| <= max_order`: framings in
/// `[-9, 9]`, off-diagonal linking numbers in `[-2, 2]`.
pub fn random_symmetric(rng: &mut ChaCha8Rng, max_n: usize, max_order: i64) -> Vec<Vec<i64>> {
    loop {
        let n = rng.gen_range(1..=max_n);
        let mut b = vec![vec![0i64; n]; n];
        for i in 0..n {
            b[i][i] = rng.gen_range(-9..=9);
            for j in i + 1..n {
                let v = rng.gen_range(-2..=2);
                b[i][j] = v;
                b[j][i] = v;
            }
        }
        let d = oracle_det(&b);
        if d != 0 && d.abs() <= max_order {
            return b;
        }
    }
}

/// Determinant by permutation expansion.
pub fn oracle_det(b: &[Vec<i64>]) -> i64 {
    fn rec(b: &[Vec<i64>], row: usize, used: &mut Vec<bool>, sign: i64) -> i64 {
        let n = b.len();
        if row == n {
            return sign;
        }
        let mut total = 0;
        for c in 0..n {
            if used[c] || b[row][c] == 0 {
                continue;
            }
            // parity: number of used columns to the right of c
            let inv = used[c + 1..].iter().filter(|&&u| u).count() as i64;
            used[c] = true;
            let s = if inv % 2 == 0 { sign } else { -sign };
            total += b[row][c] * rec(b, row + 1, used, s);
            used[c] = false;
        }
        total
    }
    rec(b, 0, &mut vec![false; b.len()], 1)
}

/// Exact inverse by Gauss-Jordan elimination over the rationals.
pub fn oracle_inverse(b: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    let n = b.len();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    if j < n {
                        BigRational::from_integer(b[i][j].into())
                    } else if j - n == i {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("invertible");
        a.swap(col, piv);
        let p = a[col][col].clone();
        for v in a[col].iter_mut() {
            *v = &*v / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..2 * n {
                    let t = &f * &a[col][j];
                    a[r][j] -= t;
                }
            }
        }
    }
    a.into_iter().map(|row| row[n..].to_vec()).collect()
}

pub fn bilinear(m: &[Vec<BigRational>], x: &[BigInt], y: &[BigInt]) -> BigRational {
    let mut acc = BigRational::zero();
    for (i, xi) in x.iter().enumerate() {
        for (j, yj) in y.iter().enumerate() {
            acc += &m[i][j] * BigRational::from_integer(xi * yj);
        }
    }
    acc
}

/// `-½(XᵀB⁻¹X + XᵀB⁻¹s) mod 1` with a test-side inverse.
pub fn oracle_phi(inv: &[Vec<BigRational>], s: &[BigInt], x: &[BigInt]) -> QmodZ {
    let v = bilinear(inv, x, x) + bilinear(inv, x, s);
    QmodZ::from_rational(&(-v / BigRational::from_integer(2.into())))
}

/// `-XᵀB⁻¹Y mod 1`.
pub fn oracle_linking(inv: &[Vec<BigRational>], x: &[BigInt], y: &[BigInt]) -> QmodZ {
    QmodZ::from_rational(&-bilinear(inv, x, y))
}

/// Direct complex summation `Σ e(v)`.
pub fn oracle_gauss_sum(values: &[QmodZ]) -> (f64, f64) {
    values.iter().fold((0.0, 0.0), |(re, im), v| {
        let a = TAU * v.to_f64();
        (re + a.cos(), im + a.sin())
    })
}

/// Distance between two phases in turns, mod 1.
pub fn turn_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}

/// lcm of the denominators of a list of values.
pub fn lcm_of_denominators(values: &[QmodZ]) -> BigInt {
    values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub fn to_i64(x: &BigInt) -> i64 {
    x.to_i64().unwrap()
}

pub fn abs_order(b: &[Vec<i64>]) -> i64 {
    oracle_det(b).abs()
}

pub fn is_positive(x: &BigInt) -> bool {
    x.is_positive()
}
