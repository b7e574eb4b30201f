//! Spin^c structures on a surgery presentation, in the two combinatorial
//! encodings: Chern vectors (`s_i ≡ b_ii mod 2`) and charges
//! (`k_i ≡ 1 + Σ_{j≠i} b_ij mod 2`), both taken modulo `2·Im B`.
//!
//! Chern-vector normal forms are the canonical encoding; charges are
//! converted on the way in.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exactlin::{hermite, HermiteBasis};
use crate::homology::{HomologyClass, HomologyGroup, SurgeryPresentation};

fn fmt_vec(v: &[BigInt]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// Integer vector with `s_i ≡ b_ii mod 2`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChernVector(Vec<BigInt>);

impl ChernVector {
    pub fn new(p: &SurgeryPresentation, s: Vec<BigInt>) -> Result<Self> {
        if s.len() != p.n() {
            return Err(Error::DimensionMismatch { expected: p.n(), got: s.len() });
        }
        for (i, si) in s.iter().enumerate() {
            if (si - p.framing(i)).is_odd() {
                return Err(Error::InvalidChernVector { vector: fmt_vec(&s), index: i });
            }
        }
        Ok(ChernVector(s))
    }

    pub fn as_slice(&self) -> &[BigInt] {
        &self.0
    }
}

impl fmt::Display for ChernVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s={}", fmt_vec(&self.0))
    }
}

/// Integer vector with `k_i ≡ 1 + Σ_{j≠i} b_ij mod 2`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Charge(Vec<BigInt>);

impl Charge {
    pub fn new(p: &SurgeryPresentation, k: Vec<BigInt>) -> Result<Self> {
        if k.len() != p.n() {
            return Err(Error::DimensionMismatch { expected: p.n(), got: k.len() });
        }
        let base = charge_base(p);
        for (i, ki) in k.iter().enumerate() {
            if (ki - &base[i]).is_odd() {
                return Err(Error::InvalidCharge { vector: fmt_vec(&k), index: i });
            }
        }
        Ok(Charge(k))
    }

    pub fn as_slice(&self) -> &[BigInt] {
        &self.0
    }
}

impl fmt::Display for Charge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={}", fmt_vec(&self.0))
    }
}

/// `k⁰_i = 1 + Σ_{j≠i} b_ij`.
fn charge_base(p: &SurgeryPresentation) -> Vec<BigInt> {
    let b = p.matrix();
    (0..p.n())
        .map(|i| {
            (0..p.n()).filter(|&j| j != i).fold(BigInt::one(), |acc, j| acc + &b[(i, j)])
        })
        .collect()
}

/// `v ↦ 1 - v_j + Σ_i b_ij`. Sends charges to Chern vectors and back; it is
/// an involution.
fn flip(p: &SurgeryPresentation, v: &[BigInt]) -> Vec<BigInt> {
    let b = p.matrix();
    (0..p.n())
        .map(|j| (0..p.n()).fold(BigInt::one() - &v[j], |acc, i| acc + &b[(i, j)]))
        .collect()
}

/// A Spin^c structure, held as the normal form of a Chern vector modulo `2·Im B`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpincClass {
    rep: ChernVector,
}

impl SpincClass {
    pub fn chern(&self) -> &ChernVector {
        &self.rep
    }

    /// Label used in reports and fixtures, e.g. `s=6,4`.
    pub fn label(&self) -> String {
        self.rep.to_string()
    }
}

impl fmt::Display for SpincClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.rep.fmt(f)
    }
}

/// The set `Spin^c(M)` for one presentation, with the H-action.
#[derive(Clone, Debug)]
pub struct SpincSet {
    group: Arc<HomologyGroup>,
    double: HermiteBasis,
}

impl SpincSet {
    pub fn new(group: Arc<HomologyGroup>) -> Result<Self> {
        let two = BigInt::from(2);
        let double = hermite(&group.presentation().matrix().scaled(&two))?;
        Ok(SpincSet { group, double })
    }

    pub fn group(&self) -> &Arc<HomologyGroup> {
        &self.group
    }

    pub fn presentation(&self) -> &SurgeryPresentation {
        self.group.presentation()
    }

    pub fn chern_vector(&self, s: Vec<BigInt>) -> Result<ChernVector> {
        ChernVector::new(self.presentation(), s)
    }

    pub fn charge(&self, k: Vec<BigInt>) -> Result<Charge> {
        Charge::new(self.presentation(), k)
    }

    pub fn class_of(&self, s: &ChernVector) -> SpincClass {
        SpincClass { rep: ChernVector(self.double.normal_form(&s.0)) }
    }

    pub fn class_of_vector(&self, s: Vec<BigInt>) -> Result<SpincClass> {
        Ok(self.class_of(&self.chern_vector(s)?))
    }

    /// Canonical representative of a charge modulo `2·Im B`.
    pub fn charge_class(&self, k: &Charge) -> Charge {
        Charge(self.double.normal_form(&k.0))
    }

    fn shifted_cosets(&self, base: &[BigInt]) -> Vec<Vec<BigInt>> {
        let two = BigInt::from(2);
        let mut reps: Vec<Vec<BigInt>> = self
            .group
            .hermite()
            .cosets()
            .into_iter()
            .map(|t| {
                let v: Vec<BigInt> = base.iter().zip(&t).map(|(b, ti)| b + &two * ti).collect();
                self.double.normal_form(&v)
            })
            .collect();
        reps.sort();
        reps
    }

    /// All |H| Spin^c structures as Chern classes, sorted by representative.
    pub fn chern_enumerate(&self) -> Vec<SpincClass> {
        let base = self.presentation().matrix().diagonal();
        self.shifted_cosets(&base)
            .into_iter()
            .map(|s| SpincClass { rep: ChernVector(s) })
            .collect()
    }

    /// All |H| charge classes, sorted by representative.
    pub fn charge_enumerate(&self) -> Vec<Charge> {
        let base = charge_base(self.presentation());
        self.shifted_cosets(&base).into_iter().map(Charge).collect()
    }

    /// `s_j = 1 - k_j + Σ_i b_ij`.
    pub fn charge_to_chern(&self, k: &Charge) -> ChernVector {
        ChernVector(flip(self.presentation(), &k.0))
    }

    /// `k_j = 1 - s_j + Σ_i b_ij`.
    pub fn chern_to_charge(&self, s: &ChernVector) -> Charge {
        Charge(flip(self.presentation(), &s.0))
    }

    pub fn class_of_charge(&self, k: &Charge) -> SpincClass {
        self.class_of(&self.charge_to_chern(k))
    }

    /// `h·σ`, realized on Chern vectors as `[s] ↦ [s + 2X_h]`.
    pub fn act(&self, h: &HomologyClass, sigma: &SpincClass) -> SpincClass {
        let x = self.group.lift(h);
        let two = BigInt::from(2);
        let s: Vec<BigInt> = sigma.rep.0.iter().zip(&x).map(|(a, b)| a + &two * b).collect();
        SpincClass { rep: ChernVector(self.double.normal_form(&s)) }
    }

    /// Resolves `s=<ints>` (Chern vector) or `k=<ints>` (charge), comma separated.
    pub fn resolve(&self, label: &str) -> Result<SpincClass> {
        let unknown = || Error::UnknownLabel(label.to_string());
        let (kind, body) = label.trim().split_once('=').ok_or_else(unknown)?;
        let v = body
            .split(',')
            .map(|t| t.trim().parse::<BigInt>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| unknown())?;
        match kind.trim() {
            "s" => self.class_of_vector(v),
            "k" => Ok(self.class_of_charge(&self.charge(v)?)),
            _ => Err(unknown()),
        }
    }

    /// The unique `h` with `to = h·from`.
    pub fn difference(&self, to: &SpincClass, from: &SpincClass) -> HomologyClass {
        let x: Vec<BigInt> = to
            .rep
            .0
            .iter()
            .zip(&from.rep.0)
            .map(|(a, b)| {
                let d = a - b;
                debug_assert!(d.is_even());
                d / 2
            })
            .collect();
        self.group.project(&x).expect("dimension matches")
    }
}

pub fn chern_enumerate(set: &SpincSet) -> Vec<SpincClass> {
    set.chern_enumerate()
}

pub fn charge_enumerate(set: &SpincSet) -> Vec<Charge> {
    set.charge_enumerate()
}
