//! Executable form of `q_{M,σ} = φ_{M,σ}`.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{match_presentations, phi_from_chern, q_from_charge_split, Isometry};
use crate::error::{Error, Result};
use crate::homology::{HomologyClass, QmodZ};
use crate::spinc::{Charge, SpincClass, SpincSet};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Mismatch {
    pub class: String,
    pub q: QmodZ,
    pub phi: QmodZ,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassVerdict {
    pub charge: String,
    pub chern: String,
    pub pass: bool,
    pub first_mismatch: Option<Mismatch>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremReport {
    pub order: String,
    pub verdicts: Vec<ClassVerdict>,
}

impl TheoremReport {
    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn passed(&self) -> usize {
        self.verdicts.iter().filter(|v| v.pass).count()
    }
}

fn verdict(set: &SpincSet, k: &Charge) -> Result<ClassVerdict> {
    let group = set.group();
    let s = set.charge_to_chern(k);
    let q = q_from_charge_split(group, k)?;
    let phi = phi_from_chern(group, &s)?;
    let first_mismatch = q
        .numerators()
        .iter()
        .zip(phi.numerators())
        .position(|(a, b)| a != b)
        .map(|i| -> Result<Mismatch> {
            Ok(Mismatch {
                class: group.class_at(i)?.to_string(),
                q: q.value_at(i),
                phi: phi.value_at(i),
            })
        })
        .transpose()?;
    Ok(ClassVerdict {
        charge: k.to_string(),
        chern: set.class_of(&s).label(),
        pass: first_mismatch.is_none(),
        first_mismatch,
    })
}

/// Compares `q_from_charge_split(k)` with `phi_from_chern(charge_to_chern(k))`
/// as full tables for every charge class. Classes are processed in parallel;
/// the report lists them in sorted order.
pub fn verify_theorem_split(set: &SpincSet) -> Result<TheoremReport> {
    if !set.presentation().is_split() {
        return Err(Error::NotAlgebraicallySplit);
    }
    set.group().layout()?;
    let charges = set.charge_enumerate();
    let verdicts = charges.par_iter().map(|k| verdict(set, k)).collect::<Result<Vec<_>>>()?;
    Ok(TheoremReport { order: set.group().order().to_string(), verdicts })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompanionVerdict {
    pub sigma: String,
    /// Charge on the split companion whose `q`, pulled back along ψ, equals `φ_σ`.
    pub matched_charge: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompanionReport {
    /// Images of the Smith generators under ψ.
    pub isometry: Vec<String>,
    pub companion: TheoremReport,
    pub verdicts: Vec<CompanionVerdict>,
    /// Every σ matched, and no two σ matched to the same charge.
    pub bijective: bool,
}

impl CompanionReport {
    pub fn all_pass(&self) -> bool {
        self.companion.all_pass() && self.bijective
    }
}

/// Theorem check for a presentation that is not algebraically split, through
/// a split presentation of the same manifold: finds an isometry
/// `ψ: H → H_split`, verifies the split side, and matches each `φ_σ` with
/// `q_k ∘ ψ` for some charge `k` of the companion.
pub fn verify_theorem_via_companion(set: &SpincSet, companion: &SpincSet) -> Result<CompanionReport> {
    let psi: Isometry = match_presentations(set.group(), companion.group())?;
    let split = verify_theorem_split(companion)?;

    let mut pulled: HashMap<Vec<u64>, Charge> = HashMap::new();
    for k in companion.charge_enumerate() {
        let q = q_from_charge_split(companion.group(), &k)?.pullback(&psi)?;
        pulled.insert(q.numerators().to_vec(), k);
    }
    let classes: Vec<SpincClass> = set.chern_enumerate();
    let mut used = std::collections::HashSet::new();
    let mut bijective = true;
    let mut verdicts = Vec::with_capacity(classes.len());
    for sigma in &classes {
        let phi = phi_from_chern(set.group(), sigma.chern())?;
        let matched = pulled.get(phi.numerators());
        match matched {
            Some(k) => bijective &= used.insert(k.clone()),
            None => bijective = false,
        }
        verdicts.push(CompanionVerdict {
            sigma: sigma.label(),
            matched_charge: matched.map(ToString::to_string),
        });
    }
    let isometry = psi.images().iter().map(HomologyClass::to_string).collect();
    Ok(CompanionReport { isometry, companion: split, verdicts, bijective })
}
