//! Per-group integer data behind the fast constructions of φ and q.
//!
//! Everything is kept over integer denominators so that building a
//! quadratic function for one more Spin^c structure costs a handful of
//! big-integer multiply-adds plus one O(|H|) table sweep.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactlin::IntMatrix;
use crate::homology::{HomologyGroup, QmodZ};

#[derive(Clone, Debug)]
pub(crate) struct Kernels {
    /// `det B`, signed.
    det: BigInt,
    /// `X_iᵀ · adj(B)` for the Smith generator lifts `X_i`.
    gen_adj: Vec<Vec<BigInt>>,
    /// `X_iᵀ · adj(B) · X_i`.
    gen_quad: Vec<BigInt>,
    /// `2|det B|`: common denominator of the meridian polarization.
    base_den: BigInt,
    /// Meridian expansions of the relations (columns of B) with their
    /// constant parts `Σ C(a_j,2) Λ_jj + Σ_{i<j} a_i a_j Λ_ij` over `base_den`.
    relations: Vec<(Vec<BigInt>, BigInt)>,
    /// Meridian expansions of the Smith generators, same format.
    generators: Vec<(Vec<BigInt>, BigInt)>,
    /// Table modulus `2·exponent`.
    modulus: u64,
}

fn binom2(a: &BigInt) -> BigInt {
    a * (a - 1) / 2
}

impl Kernels {
    pub fn new(group: &HomologyGroup) -> Self {
        let p = group.presentation();
        let n = p.n();
        let det = p.det().clone();
        let inv = group.inverse();
        let mut adj = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = &inv[(i, j)] * num_rational::BigRational::from_integer(det.clone());
                adj[(i, j)] = v.to_integer();
            }
        }
        let lifts: Vec<Vec<BigInt>> = (0..group.rank()).map(|i| group.generator_lift(i)).collect();
        let adj_t = adj.transpose();
        let gen_adj: Vec<Vec<BigInt>> =
            lifts.iter().map(|x| adj_t.mul_vec(x).expect("dimension")).collect();
        let gen_quad: Vec<BigInt> = lifts
            .iter()
            .zip(&gen_adj)
            .map(|(x, xa)| x.iter().zip(xa).map(|(a, b)| a * b).sum())
            .collect();

        // λ(m_i, m_j) = -(B⁻¹)_ij = -adj_ij / det; over 2|det| that is -2·sgn(det)·adj_ij
        let base_den = det.abs() * 2;
        let sign = if det.is_negative() { BigInt::from(-1) } else { BigInt::from(1) };
        let lam = |i: usize, j: usize| -> BigInt {
            let v: BigInt = &adj[(i, j)] * &sign;
            -(v * 2u32)
        };
        let constant = |a: &[BigInt]| -> BigInt {
            let mut c = BigInt::zero();
            for i in 0..n {
                c += binom2(&a[i]) * lam(i, i);
                for j in i + 1..n {
                    c += &a[i] * &a[j] * lam(i, j);
                }
            }
            c.mod_floor(&base_den)
        };
        let b = p.matrix();
        let relations = (0..n)
            .map(|j| {
                let a = b.column(j);
                let c = constant(&a);
                (a, c)
            })
            .collect();
        // g_i = [X_i] = Σ_j (-X_i)_j [m_j]
        let generators = lifts
            .iter()
            .map(|x| {
                let a: Vec<BigInt> = x.iter().map(|v| -v).collect();
                let c = constant(&a);
                (a, c)
            })
            .collect();
        let modulus = group.layout().map(|l| 2 * l.exponent).unwrap_or(0);
        Kernels { det, gen_adj, gen_quad, base_den, relations, generators, modulus }
    }

    /// `φ_s` on the Smith generators, as numerators over the table modulus.
    pub fn phi_generators(&self, s: &[BigInt]) -> Vec<u64> {
        let m = BigInt::from(self.modulus);
        let den = &self.det * 2;
        self.gen_adj
            .iter()
            .zip(&self.gen_quad)
            .map(|(xa, xq)| {
                let lin: BigInt = xa.iter().zip(s).map(|(a, b)| a * b).sum();
                let num = -(xq + lin) * &m;
                let (t, r) = num.div_mod_floor(&den);
                debug_assert!(r.is_zero(), "φ value outside (1/M)Z");
                t.mod_floor(&m).to_u64().unwrap()
            })
            .collect()
    }

    /// Extends values on the meridians to the Smith generators, checking that
    /// every relation is sent to 0.
    pub fn extend_meridians(&self, values: &[QmodZ]) -> Result<Vec<u64>> {
        let lcm = values.iter().fold(self.base_den.clone(), |acc, v| acc.lcm(v.denom()));
        let scale = &lcm / &self.base_den;
        let nums: Vec<BigInt> = values.iter().map(|v| v.numer() * (&lcm / v.denom())).collect();
        let eval = |(a, c): &(Vec<BigInt>, BigInt)| -> BigInt {
            let lin: BigInt = a.iter().zip(&nums).map(|(x, y)| x * y).sum();
            (c * &scale + lin).mod_floor(&lcm)
        };
        for (j, rel) in self.relations.iter().enumerate() {
            let v = eval(rel);
            if !v.is_zero() {
                return Err(Error::ConsistencyError(format!(
                    "relation B·e_{} evaluates to {} instead of 0",
                    j + 1,
                    QmodZ::new(v, lcm.clone())
                )));
            }
        }
        let m = BigInt::from(self.modulus);
        self.generators
            .iter()
            .map(|g| {
                let (t, r) = (eval(g) * &m).div_mod_floor(&lcm);
                if !r.is_zero() {
                    return Err(Error::ConsistencyError(
                        "generator value has a denominator not dividing 2·exponent".into(),
                    ));
                }
                Ok(t.to_u64().unwrap())
            })
            .collect()
    }
}
