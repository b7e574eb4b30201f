use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::QuadraticFunction;
use crate::error::{Error, Result};
use crate::homology::QmodZ;

pub const DEFAULT_TOLERANCE: f64 = 1e-6;

/// Gauss sum `S = Σ_x e(q(x))` of a quadratic function and its phase `d`,
/// `S = √|H| · e(d)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GaussData {
    /// `|S|²`, evaluated in double precision.
    pub modulus_squared: f64,
    pub order: u64,
    pub d: QmodZ,
    /// Multiplicity of each value of `q`.
    pub phase_tally: BTreeMap<QmodZ, u64>,
    /// Distance between the numeric phase and the reconstructed `d`, in turns.
    pub residual: f64,
    /// `4N`, `N` the lcm of the value denominators; the denominator of `d` divides it.
    pub denominator_bound: u64,
}

pub fn gauss(q: &QuadraticFunction) -> Result<GaussData> {
    gauss_with_tolerance(q, DEFAULT_TOLERANCE)
}

pub fn gauss_with_tolerance(q: &QuadraticFunction, tolerance: f64) -> Result<GaussData> {
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for &v in q.numerators() {
        *counts.entry(v).or_insert(0) += 1;
    }
    let m = q.modulus();
    let tally = counts.into_iter().map(|(v, c)| (QmodZ::new(v, m), c)).collect();
    gauss_from_tally(&tally, q.numerators().len() as u64, tolerance)
}

/// Gauss data from a value tally alone. `order` is `|H|`.
pub fn gauss_from_tally(
    tally: &BTreeMap<QmodZ, u64>,
    order: u64,
    tolerance: f64,
) -> Result<GaussData> {
    let (mut re, mut im) = (0.0f64, 0.0f64);
    let mut n = BigInt::from(1);
    for (v, &c) in tally {
        let angle = TAU * v.to_f64();
        re += c as f64 * angle.cos();
        im += c as f64 * angle.sin();
        n = n.lcm(v.denom());
    }
    let modulus_squared = re * re + im * im;
    let h = order as f64;
    if (modulus_squared - h).abs() >= tolerance * h {
        return Err(Error::DegenerateFunction { modulus_squared, order });
    }
    let bound = (n * 4u32).to_u64().ok_or_else(|| {
        Error::ConsistencyError("denominator bound does not fit a machine word".into())
    })?;
    let phase = im.atan2(re) / TAU;
    let snapped = (phase * bound as f64).round();
    let residual = (phase - snapped / bound as f64).abs();
    if residual >= tolerance {
        return Err(Error::ReconstructionFailed { residual, tolerance });
    }
    let d = QmodZ::new(snapped as i64, bound);
    Ok(GaussData {
        modulus_squared,
        order,
        d,
        phase_tally: tally.clone(),
        residual,
        denominator_bound: bound,
    })
}

impl GaussData {
    /// True when `d` is zero, i.e. `S` is a positive real.
    pub fn is_real_positive(&self) -> bool {
        self.d.numer().is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{HomologyGroup, SurgeryPresentation};
    use crate::quad::phi_from_chern;
    use crate::spinc::SpincSet;
    use std::sync::Arc;

    fn phi(rows: &[Vec<i64>], s: &[i64]) -> QuadraticFunction {
        let p = SurgeryPresentation::from_rows(rows).unwrap();
        let g = Arc::new(HomologyGroup::new(p).unwrap());
        let set = SpincSet::new(g.clone()).unwrap();
        let sv = set.chern_vector(s.iter().map(|&x| x.into()).collect()).unwrap();
        phi_from_chern(&g, &sv).unwrap()
    }

    #[test]
    fn lens_seven() {
        let g = gauss(&phi(&[vec![7]], &[7])).unwrap();
        assert_eq!(g.d, QmodZ::new(3, 4));
        assert!((g.modulus_squared - 7.0).abs() < 1e-9);
        assert_eq!(g.denominator_bound, 28);
        assert_eq!(gauss(&phi(&[vec![7]], &[9])).unwrap().d, QmodZ::new(9, 28));
    }

    #[test]
    fn trivial() {
        let g = gauss(&phi(&[vec![1]], &[1])).unwrap();
        assert_eq!(g.d, QmodZ::zero());
        assert!((g.modulus_squared - 1.0).abs() < 1e-12);
        assert!(g.is_real_positive());
    }

    #[test]
    fn degenerate_tally() {
        // the zero function on Z/2 is not a refinement of a nondegenerate pairing
        let tally = BTreeMap::from([(QmodZ::zero(), 2)]);
        assert!(matches!(
            gauss_from_tally(&tally, 2, DEFAULT_TOLERANCE),
            Err(Error::DegenerateFunction { .. })
        ));
    }
}
