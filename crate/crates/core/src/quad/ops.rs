//! Presentation-level connected sum and orientation reversal.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::Result;
use crate::homology::{HomologyGroup, SurgeryPresentation};
use crate::spinc::{SpincClass, SpincSet};

/// Block sum `B₁ ⊕ B₂` with the concatenated Chern vector.
pub fn direct_sum(
    set1: &SpincSet,
    sigma1: &SpincClass,
    set2: &SpincSet,
    sigma2: &SpincClass,
) -> Result<(SpincSet, SpincClass)> {
    let b = set1.presentation().matrix().block_sum(set2.presentation().matrix());
    let set = SpincSet::new(Arc::new(HomologyGroup::new(SurgeryPresentation::new(b)?)?))?;
    let s: Vec<BigInt> =
        sigma1.chern().as_slice().iter().chain(sigma2.chern().as_slice()).cloned().collect();
    let sigma = set.class_of_vector(s)?;
    Ok((set, sigma))
}

/// `(B, s) ↦ (-B, -s)`: the same manifold with the opposite orientation.
///
/// Both presentations have the group `coker B`; matched through `X ↦ -X`
/// the quadratic functions satisfy `φ_{-B,-s}(-X) = -φ_{B,s}(X)`.
pub fn negate(set: &SpincSet, sigma: &SpincClass) -> Result<(SpincSet, SpincClass)> {
    let b = set.presentation().matrix().neg();
    let neg = SpincSet::new(Arc::new(HomologyGroup::new(SurgeryPresentation::new(b)?)?))?;
    let s: Vec<BigInt> = sigma.chern().as_slice().iter().map(|x| -x).collect();
    let sigma = neg.class_of_vector(s)?;
    Ok((neg, sigma))
}
