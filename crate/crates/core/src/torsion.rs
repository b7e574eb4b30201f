//! Ingested torsion tables `h ↦ τ_σ(h)` and the invariants read off them.
//!
//! Tables are input data; nothing here computes torsion from a link. From
//! a table we check the mod-1 axiom
//! `τ(h₁+h₂) - τ(h₁) - τ(h₂) + τ(0) = -λ(h₁, h₂)`, extract
//! `q(x) = τ(0) - τ(-x)`, and form `c_σ = τ_σ(0) mod 1` and
//! `c(M) = c_σ - d_σ`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::homology::{HomologyClass, HomologyGroup, QmodZ};
use crate::quad::{gauss_with_tolerance, phi_from_chern, QuadraticFunction, DEFAULT_TOLERANCE};
use crate::spinc::SpincSet;

/// `τ_σ(h)` for every `h`, in element index order.
#[derive(Clone, Debug)]
pub struct TorsionTable {
    group: Arc<HomologyGroup>,
    sigma: String,
    values: Vec<BigRational>,
}

impl TorsionTable {
    pub fn new(group: &Arc<HomologyGroup>, sigma: impl Into<String>, values: Vec<BigRational>) -> Result<Self> {
        let expected = group.size()?;
        if values.len() != expected {
            return Err(Error::IncompleteTable { expected, got: values.len() });
        }
        Ok(TorsionTable { group: group.clone(), sigma: sigma.into(), values })
    }

    pub fn group(&self) -> &Arc<HomologyGroup> {
        &self.group
    }

    pub fn sigma(&self) -> &str {
        &self.sigma
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn value(&self, h: &HomologyClass) -> &BigRational {
        &self.values[self.group.index_of(h).expect("tabulated group")]
    }

    /// `x ↦ τ(x - h)`, relabelled; the table of `h·σ` when this is the table of `σ`.
    pub fn translate(&self, h: &HomologyClass, sigma: impl Into<String>) -> Self {
        let layout = self.group.layout().expect("tabulated group");
        let minus_h = layout.neg(self.group.index_of(h).expect("tabulated group"));
        let values = (0..layout.size).map(|x| self.values[layout.add(x, minus_h)].clone()).collect();
        TorsionTable { group: self.group.clone(), sigma: sigma.into(), values }
    }

    /// Values mod 1 as numerators over a common denominator divisible by the exponent.
    fn residues(&self) -> Result<(u64, Vec<u64>)> {
        let e = BigInt::from(self.group.layout()?.exponent);
        let den = self.values.iter().fold(e, |acc, v| acc.lcm(v.denom()));
        let big = den.to_u64().filter(|&d| d < 1 << 62).ok_or_else(|| {
            Error::ConsistencyError(format!("torsion denominators too large (lcm {den})"))
        })?;
        let nums = self
            .values
            .iter()
            .map(|v| (v.numer() * (&den / v.denom())).mod_floor(&den).to_u64().unwrap())
            .collect();
        Ok((big, nums))
    }
}

/// First pair violating the torsion axiom, or `None`.
pub fn check_axiom(t: &TorsionTable) -> Result<Option<(HomologyClass, HomologyClass)>> {
    let g = &t.group;
    let layout = g.layout()?;
    let (m, v) = t.residues()?;
    let scale = m / layout.exponent;
    for h1 in 0..layout.size {
        let c1 = g.class_at(h1)?;
        let row = g.linking_row(&c1)?;
        for h2 in 0..layout.size {
            let s = layout.add(h1, h2);
            let lhs = (v[s] + v[0] + 2 * m - v[h1] - v[h2]) % m;
            let rhs = (m - row[h2] * scale % m) % m;
            if lhs != rhs {
                return Ok(Some((c1, g.class_at(h2)?)));
            }
        }
    }
    Ok(None)
}

/// `q(x) = τ(0) - τ(-x) mod 1`.
pub fn extract_q(t: &TorsionTable) -> Result<QuadraticFunction> {
    if let Some((h1, h2)) = check_axiom(t)? {
        return Err(Error::AxiomViolation { h1: h1.to_string(), h2: h2.to_string() });
    }
    let layout = t.group.layout()?;
    let values: Vec<QmodZ> = (0..layout.size)
        .map(|x| QmodZ::from_rational(&(&t.values[0] - &t.values[layout.neg(x)])))
        .collect();
    QuadraticFunction::from_values(&t.group, &values)
}

/// The table `τ(h) = t₀ - φ(-h)` (values taken in `[0, 1)` for `φ`).
pub fn synthesize(phi: &QuadraticFunction, t0: &BigRational, sigma: impl Into<String>) -> TorsionTable {
    let g = phi.group();
    let layout = g.layout().expect("tabulated group");
    let values = (0..layout.size).map(|h| t0 - phi.value_at(layout.neg(h)).to_rational()).collect();
    TorsionTable { group: g.clone(), sigma: sigma.into(), values }
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionReport {
    pub sigma: String,
    pub axiom_ok: bool,
    #[serde(skip)]
    pub extracted_q: QuadraticFunction,
    /// The extracted `q` agrees with `φ_σ` entrywise.
    pub q_equals_phi: bool,
    pub c_sigma: QmodZ,
    pub d_sigma: QmodZ,
    pub c_m: QmodZ,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub reports: Vec<TorsionReport>,
    /// Identities checked across tables (empty for a single table).
    pub cross_checks: Vec<String>,
    /// The common value of `c_σ - d_σ`.
    pub c_m: QmodZ,
}

fn report(set: &SpincSet, t: &TorsionTable, tolerance: f64) -> Result<TorsionReport> {
    let sigma = set.resolve(&t.sigma)?;
    let extracted_q = extract_q(t)?;
    let phi = phi_from_chern(set.group(), sigma.chern())?;
    let d_sigma = gauss_with_tolerance(&phi, tolerance)?.d;
    let c_sigma = QmodZ::from_rational(&t.values[0]);
    let c_m = &c_sigma - &d_sigma;
    Ok(TorsionReport {
        sigma: sigma.label(),
        axiom_ok: true,
        q_equals_phi: extracted_q == phi,
        extracted_q,
        c_sigma,
        d_sigma,
        c_m,
    })
}

/// `c_invariant` with the default Gauss tolerance.
pub fn c_invariant(set: &SpincSet, tables: &[TorsionTable]) -> Result<FamilyReport> {
    c_invariant_with_tolerance(set, tables, DEFAULT_TOLERANCE)
}

/// Per-table reports plus, for several tables, the family identities
/// relative to the first table `σ₀`: equivariance `τ_{h·σ₀}(x) = τ_{σ₀}(x - h)`,
/// `c_{h·σ₀} = c_{σ₀} - φ_{σ₀}(h)`, and constancy of `c(M)`.
pub fn c_invariant_with_tolerance(
    set: &SpincSet,
    tables: &[TorsionTable],
    tolerance: f64,
) -> Result<FamilyReport> {
    let first = tables.first().ok_or(Error::IncompleteTable { expected: 1, got: 0 })?;
    let group = set.group();
    for t in tables {
        if t.group.presentation() != group.presentation() {
            return Err(Error::InconsistentFamily {
                identity: "presentation".into(),
                detail: format!("table {} belongs to another presentation", t.sigma),
            });
        }
    }
    let reports = tables.iter().map(|t| report(set, t, tolerance)).collect::<Result<Vec<_>>>()?;

    let mut cross_checks = Vec::new();
    if tables.len() > 1 {
        let sigma0 = set.resolve(&first.sigma)?;
        let phi0 = phi_from_chern(group, sigma0.chern())?;
        let mut seen = std::collections::BTreeSet::new();
        for (t, r) in tables.iter().zip(&reports) {
            if !seen.insert(r.sigma.clone()) {
                return Err(Error::InconsistentFamily {
                    identity: "distinct structures".into(),
                    detail: format!("two tables for {}", r.sigma),
                });
            }
            let h = set.difference(&set.resolve(&t.sigma)?, &sigma0);
            if first.translate(&h, t.sigma.clone()).values != t.values {
                return Err(Error::InconsistentFamily {
                    identity: "equivariance h·τ(σ) = τ(h·σ)".into(),
                    detail: format!("table {} is not the translate of {} by {h}", r.sigma, reports[0].sigma),
                });
            }
            if r.c_sigma != &reports[0].c_sigma - &phi0.value(&h) {
                return Err(Error::InconsistentFamily {
                    identity: "c_{h·σ} = c_σ - φ_σ(h)".into(),
                    detail: format!("fails for {} with h = {h}", r.sigma),
                });
            }
        }
        cross_checks.push("equivariance h·τ(σ) = τ(h·σ)".to_string());
        cross_checks.push("c_{h·σ} = c_σ - φ_σ(h)".to_string());
    }
    let c_m = reports[0].c_m.clone();
    if let Some(r) = reports.iter().find(|r| r.c_m != c_m) {
        return Err(Error::InconsistentFamily {
            identity: "c(M) independent of σ".into(),
            detail: format!("{} gives {} but {} gives {}", reports[0].sigma, c_m, r.sigma, r.c_m),
        });
    }
    if tables.len() > 1 {
        cross_checks.push("c(M) independent of σ".to_string());
    }
    Ok(FamilyReport { reports, cross_checks, c_m })
}

impl FamilyReport {
    pub fn all_q_equal_phi(&self) -> bool {
        self.reports.iter().all(|r| r.q_equals_phi)
    }
}
