//! Quadratic functions over the linking pairing.
//!
//! A [`QuadraticFunction`] is a full table `H → Q/Z` with
//! `q(x + y) - q(x) - q(y) = λ(x, y)`. Values are stored as numerators over
//! the common denominator `2e`, `e` the exponent of `H`; every quadratic
//! refinement of `λ` takes values in `(1/2e)Z`.
//!
//! Constructions:
//! * [`phi_from_chern`]: `φ_s(x) = -½(XᵀB⁻¹X + XᵀB⁻¹s) mod 1`,
//! * [`q_from_charge_split`]: `q_k([m_j]) = ½ - k_j/(2b_jj)` on a diagonal
//!   presentation, extended to all of `H` through the refinement identity,
//! * [`quad_extend`]: any values on the meridians, checked against the
//!   relations of `coker B`.

mod gauss;
pub(crate) mod kernel;
mod matching;
mod ops;
mod theorem;

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::homology::{HomologyClass, HomologyGroup, QmodZ, SurgeryPresentation};
use crate::spinc::{Charge, ChernVector};

pub use gauss::{gauss, gauss_from_tally, gauss_with_tolerance, GaussData, DEFAULT_TOLERANCE};
pub(crate) use matching::linking_table;
pub use matching::{match_presentations, Isometry};
pub use ops::{direct_sum, negate};
pub use theorem::{
    verify_theorem_split, verify_theorem_via_companion, ClassVerdict, CompanionReport,
    CompanionVerdict, Mismatch, TheoremReport,
};

#[derive(Clone, Debug)]
pub struct QuadraticFunction {
    group: Arc<HomologyGroup>,
    modulus: u64,
    values: Vec<u64>,
}

impl PartialEq for QuadraticFunction {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.group, &other.group)
            || self.group.presentation() == other.group.presentation())
            && self.modulus == other.modulus
            && self.values == other.values
    }
}

impl Eq for QuadraticFunction {}

impl QuadraticFunction {
    /// Builds the table from values on the Smith generators (numerators over
    /// `2e`). The polarization is the group's own λ.
    pub(crate) fn from_generator_numerators(group: &Arc<HomologyGroup>, gen: &[u64]) -> Result<Self> {
        let layout = group.layout()?;
        let modulus = 2 * layout.exponent;
        let gram: Vec<Vec<u64>> =
            layout.gram.iter().map(|row| row.iter().map(|v| 2 * v % modulus).collect()).collect();
        let values = layout.quadratic(gen, &gram, modulus);
        Ok(QuadraticFunction { group: group.clone(), modulus, values })
    }

    /// Wraps an explicit table, given in element index order. The table must
    /// vanish at 0 and refine λ.
    pub fn from_values(group: &Arc<HomologyGroup>, values: &[QmodZ]) -> Result<Self> {
        let layout = group.layout()?;
        if values.len() != layout.size {
            return Err(Error::DimensionMismatch { expected: layout.size, got: values.len() });
        }
        let modulus = 2 * layout.exponent;
        let nums = values
            .iter()
            .map(|v| {
                v.numerator_over(modulus).ok_or_else(|| {
                    Error::ConsistencyError(format!("value {v} is not in (1/{modulus})Z"))
                })
            })
            .collect::<Result<Vec<u64>>>()?;
        let q = QuadraticFunction { group: group.clone(), modulus, values: nums };
        if let Some((x, y)) = q.refinement_defect() {
            return Err(Error::ConsistencyError(format!(
                "table does not refine the linking pairing at ({x}, {y})"
            )));
        }
        Ok(q)
    }

    pub fn group(&self) -> &Arc<HomologyGroup> {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn numerators(&self) -> &[u64] {
        &self.values
    }

    pub fn value_at(&self, idx: usize) -> QmodZ {
        QmodZ::new(self.values[idx], self.modulus)
    }

    pub fn value(&self, x: &HomologyClass) -> QmodZ {
        self.value_at(self.group.index_of(x).expect("tabulated group"))
    }

    /// Values in element index order.
    pub fn values(&self) -> Vec<QmodZ> {
        (0..self.values.len()).map(|i| self.value_at(i)).collect()
    }

    /// First pair `(x, y)` violating `q(x+y) - q(x) - q(y) = λ(x, y)`, or a
    /// nonzero value at 0. Exhaustive, O(|H|²).
    pub fn refinement_defect(&self) -> Option<(HomologyClass, HomologyClass)> {
        let layout = self.group.layout().ok()?;
        let m = self.modulus;
        if self.values[0] != 0 {
            let z = self.group.zero();
            return Some((z.clone(), z));
        }
        for x in 0..layout.size {
            let cx = self.group.class_at(x).ok()?;
            let row = self.group.linking_row(&cx).ok()?;
            for y in 0..layout.size {
                let s = layout.add(x, y);
                let lhs = (self.values[s] + 2 * m - self.values[x] - self.values[y]) % m;
                if lhs != 2 * row[y] % m {
                    return Some((cx, self.group.class_at(y).ok()?));
                }
            }
        }
        None
    }

    /// `(h·q)(x) = q(x) + λ(h, x)`.
    pub fn act(&self, h: &HomologyClass) -> Self {
        let row = self.group.linking_row(h).expect("tabulated group");
        let m = self.modulus;
        let values = self.values.iter().zip(&row).map(|(v, l)| (v + 2 * l) % m).collect();
        QuadraticFunction { group: self.group.clone(), modulus: m, values }
    }

    pub fn negated(&self) -> Self {
        let m = self.modulus;
        let values = self.values.iter().map(|v| (m - v) % m).collect();
        QuadraticFunction { group: self.group.clone(), modulus: m, values }
    }

    /// `x ↦ self(ψ(x))` on the source of the isometry.
    pub fn pullback(&self, psi: &Isometry) -> Result<Self> {
        let map = psi.index_map()?;
        let values = map.iter().map(|&j| self.values[j]).collect();
        Ok(QuadraticFunction { group: psi.source().clone(), modulus: self.modulus, values })
    }
}

/// Direct evaluation of `φ_s` at an integer representative `X`:
/// `-½(XᵀB⁻¹X + XᵀB⁻¹s) mod 1`, with exact rationals.
pub fn phi_value(group: &HomologyGroup, s: &ChernVector, x: &[BigInt]) -> QmodZ {
    let inv = group.inverse();
    let total = inv.bilinear(x, x) + inv.bilinear(x, s.as_slice());
    QmodZ::from_rational(&(-total / BigRational::from_integer(2.into())))
}

/// The quadratic function `φ_{M,σ}` of the Spin^c structure with Chern vector `s`.
pub fn phi_from_chern(group: &Arc<HomologyGroup>, s: &ChernVector) -> Result<QuadraticFunction> {
    ChernVector::new(group.presentation(), s.as_slice().to_vec())?;
    let gen = group.kernels().phi_generators(s.as_slice());
    QuadraticFunction::from_generator_numerators(group, &gen)
}

/// `φ([m_i]) = -(1 - s_i)/(2 b_ii) mod 1` for a diagonal presentation.
pub fn phi_on_meridian_split(p: &SurgeryPresentation, s: &ChernVector, i: usize) -> Result<QmodZ> {
    if !p.is_split() {
        return Err(Error::NotAlgebraicallySplit);
    }
    ChernVector::new(p, s.as_slice().to_vec())?;
    let b = p.framing(i);
    Ok(QmodZ::new(-(BigInt::from(1) - &s.as_slice()[i]), b * 2))
}

/// Torsion-side quadratic function of a charge on an algebraically split
/// presentation: `q([m_j]) = ½ - k_j/(2b_jj)`, extended to `H`.
pub fn q_from_charge_split(group: &Arc<HomologyGroup>, k: &Charge) -> Result<QuadraticFunction> {
    let p = group.presentation();
    if !p.is_split() {
        return Err(Error::NotAlgebraicallySplit);
    }
    Charge::new(p, k.as_slice().to_vec())?;
    let values: Vec<QmodZ> = (0..p.n())
        .map(|j| {
            let b = p.framing(j);
            QmodZ::new(b - &k.as_slice()[j], b * 2)
        })
        .collect();
    quad_extend(group, &values)
}

/// Extends values on the meridians `[m_1], …, [m_n]` to a quadratic function
/// over λ, using `q(Σ a_j m_j) = Σ a_j q(m_j) + Σ C(a_j,2) λ_jj + Σ_{i<j} a_i a_j λ_ij`.
/// Fails with `ConsistencyError` when a relation of `coker B` is not sent to 0.
pub fn quad_extend(group: &Arc<HomologyGroup>, meridian_values: &[QmodZ]) -> Result<QuadraticFunction> {
    let n = group.presentation().n();
    if meridian_values.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: meridian_values.len() });
    }
    let gen = group.kernels().extend_meridians(meridian_values)?;
    QuadraticFunction::from_generator_numerators(group, &gen)
}

pub fn act_on_quad(q: &QuadraticFunction, h: &HomologyClass) -> QuadraticFunction {
    q.act(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spinc::SpincSet;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    fn setup(rows: &[Vec<i64>]) -> (Arc<HomologyGroup>, SpincSet) {
        let p = SurgeryPresentation::from_rows(rows).unwrap();
        let g = Arc::new(HomologyGroup::new(p).unwrap());
        let s = SpincSet::new(g.clone()).unwrap();
        (g, s)
    }

    fn table(v: &[(i64, i64)]) -> Vec<QmodZ> {
        v.iter().map(|&(n, d)| QmodZ::new(n, d)).collect()
    }

    #[test]
    fn phi_lens_seven() {
        let (g, s) = setup(&[vec![7]]);
        let q = phi_from_chern(&g, &s.chern_vector(ints(&[7])).unwrap()).unwrap();
        let expected = table(&[(0, 1), (3, 7), (5, 7), (6, 7), (6, 7), (5, 7), (3, 7)]);
        assert_eq!(q.values(), expected);
        // 3x²/7
        for x in 0..7i64 {
            assert_eq!(q.value_at(x as usize), QmodZ::new(3 * x * x, 7));
        }
        assert!(q.refinement_defect().is_none());
    }

    #[test]
    fn phi_trivial_and_chain() {
        let (g, s) = setup(&[vec![1]]);
        let q = phi_from_chern(&g, &s.chern_vector(ints(&[1])).unwrap()).unwrap();
        assert_eq!(q.values(), vec![QmodZ::zero()]);

        let (g, s) = setup(&[vec![4, 1], vec![1, 2]]);
        let sv = s.chern_vector(ints(&[6, 4])).unwrap();
        let q = phi_from_chern(&g, &sv).unwrap();
        let e2 = g.project(&ints(&[0, 1])).unwrap();
        assert_eq!(q.value(&e2), QmodZ::zero());
        assert_eq!(phi_value(&g, &sv, &ints(&[0, 1])), QmodZ::zero());
    }

    #[test]
    fn phi_rejects_parity() {
        let (g, _) = setup(&[vec![7]]);
        let bad = ChernVector::new(g.presentation(), ints(&[8]));
        assert!(matches!(bad, Err(Error::InvalidChernVector { .. })));
    }

    #[test]
    fn meridian_formula_split() {
        let p = SurgeryPresentation::split(&[7]).unwrap();
        let s7 = ChernVector::new(&p, ints(&[7])).unwrap();
        assert_eq!(phi_on_meridian_split(&p, &s7, 0).unwrap(), QmodZ::new(3, 7));
        let s1 = ChernVector::new(&p, ints(&[1])).unwrap();
        assert_eq!(phi_on_meridian_split(&p, &s1, 0).unwrap(), QmodZ::zero());
        let p2 = SurgeryPresentation::split(&[2]).unwrap();
        let s2 = ChernVector::new(&p2, ints(&[2])).unwrap();
        assert_eq!(phi_on_meridian_split(&p2, &s2, 0).unwrap(), QmodZ::new(1, 4));
        let chain = SurgeryPresentation::from_rows(&[vec![4, 1], vec![1, 2]]).unwrap();
        let sc = ChernVector::new(&chain, ints(&[6, 4])).unwrap();
        assert_eq!(phi_on_meridian_split(&chain, &sc, 0), Err(Error::NotAlgebraicallySplit));
    }

    #[test]
    fn meridian_formula_agrees_with_general_formula() {
        let (g, s) = setup(&[vec![3, 0], vec![0, -5]]);
        for sigma in s.chern_enumerate() {
            let q = phi_from_chern(&g, sigma.chern()).unwrap();
            for i in 0..2 {
                let expected = phi_on_meridian_split(g.presentation(), sigma.chern(), i).unwrap();
                assert_eq!(q.value(&g.meridian(i)), expected);
            }
        }
    }

    #[test]
    fn charge_side_examples() {
        let (g, s) = setup(&[vec![7]]);
        let q = q_from_charge_split(&g, &s.charge(ints(&[1])).unwrap()).unwrap();
        assert_eq!(q.value(&g.meridian(0)), QmodZ::new(3, 7));
        assert_eq!(q.value_at(0), QmodZ::zero());

        let (g, s) = setup(&[vec![2]]);
        let q = q_from_charge_split(&g, &s.charge(ints(&[1])).unwrap()).unwrap();
        assert_eq!(q.value(&g.meridian(0)), QmodZ::new(1, 4));

        let (g, s) = setup(&[vec![4, 1], vec![1, 2]]);
        let k = s.charge(ints(&[0, 0])).unwrap();
        assert_eq!(q_from_charge_split(&g, &k), Err(Error::NotAlgebraicallySplit));
    }

    #[test]
    fn extension_examples() {
        let (g, _) = setup(&[vec![7]]);
        let q = quad_extend(&g, &[QmodZ::new(3, 7)]).unwrap();
        let expected = table(&[(0, 1), (3, 7), (5, 7), (6, 7), (6, 7), (5, 7), (3, 7)]);
        assert_eq!(q.values(), expected);
        let bad = quad_extend(&g, &[QmodZ::new(1, 3)]);
        assert!(matches!(bad, Err(Error::ConsistencyError(_))));

        let (g, _) = setup(&[vec![1]]);
        assert_eq!(quad_extend(&g, &[QmodZ::zero()]).unwrap().values(), vec![QmodZ::zero()]);
        // on the trivial group only integers are consistent
        assert!(quad_extend(&g, &[QmodZ::new(1, 2)]).is_err());
    }

    #[test]
    fn action_matches_chern_shift() {
        let (g, s) = setup(&[vec![7]]);
        let q7 = phi_from_chern(&g, &s.chern_vector(ints(&[7])).unwrap()).unwrap();
        let q9 = phi_from_chern(&g, &s.chern_vector(ints(&[9])).unwrap()).unwrap();
        let e1 = g.project(&ints(&[1])).unwrap();
        assert_eq!(act_on_quad(&q7, &e1), q9);
        assert_eq!(act_on_quad(&q7, &g.zero()), q7);
        let two = g.scale(&e1, &2.into());
        assert_eq!(q7.act(&e1).act(&e1), q7.act(&two));
    }

    #[test]
    fn from_values_validates() {
        let (g, _) = setup(&[vec![7]]);
        let good = table(&[(0, 1), (3, 7), (5, 7), (6, 7), (6, 7), (5, 7), (3, 7)]);
        assert!(QuadraticFunction::from_values(&g, &good).is_ok());
        let mut bad = good.clone();
        bad[2] = QmodZ::new(1, 7);
        assert!(QuadraticFunction::from_values(&g, &bad).is_err());
    }
}
