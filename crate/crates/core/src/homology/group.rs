use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{QmodZ, SurgeryPresentation};
use crate::error::{Error, Result};
use crate::quad::kernel::Kernels;
use crate::exactlin::{hermite, inverse_rational, smith, HermiteBasis, IntMatrix, RatMatrix, SmithDecomposition};

/// Largest group for which value tables (quadratic functions, λ rows) are built.
pub const TABLE_LIMIT: usize = 1 << 24;

/// Element of `H = coker B` in Smith coordinates, `0 <= c_i < d_i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HomologyClass {
    coords: Vec<BigInt>,
}

impl HomologyClass {
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Machine-word indexing of a tabulable group: mixed radix over the
/// invariant factors, first coordinate slowest.
#[derive(Clone, Debug)]
pub(crate) struct Layout {
    pub radices: Vec<usize>,
    pub strides: Vec<usize>,
    pub size: usize,
    /// Largest invariant factor; all λ values lie in (1/exponent)Z.
    pub exponent: u64,
    /// λ(g_i, g_j) · exponent, reduced mod exponent.
    pub gram: Vec<Vec<u64>>,
}

impl Layout {
    pub fn decode(&self, mut idx: usize) -> Vec<usize> {
        let mut c = vec![0; self.radices.len()];
        for i in (0..self.radices.len()).rev() {
            c[i] = idx % self.radices[i];
            idx /= self.radices[i];
        }
        c
    }

    pub fn encode(&self, coords: &[usize]) -> usize {
        coords.iter().zip(&self.strides).map(|(c, s)| c * s).sum()
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (ca, cb) = (self.decode(a), self.decode(b));
        let c: Vec<usize> =
            ca.iter().zip(&cb).zip(&self.radices).map(|((x, y), d)| (x + y) % d).collect();
        self.encode(&c)
    }

    pub fn neg(&self, a: usize) -> usize {
        let c: Vec<usize> =
            self.decode(a).iter().zip(&self.radices).map(|(x, d)| (d - x) % d).collect();
        self.encode(&c)
    }

    /// Table of `x ↦ Σ_{i<k} coeffs[i]·x_i mod modulus` over the subgroup
    /// spanned by the first `k` generators.
    fn linear_prefix(&self, k: usize, coeffs: &[u64], modulus: u64) -> Vec<u64> {
        let mut table = vec![0u64];
        for i in 0..k {
            let d = self.radices[i];
            let c = coeffs[i] % modulus;
            let mut next = Vec::with_capacity(table.len() * d);
            for &v in &table {
                let mut w = v;
                for _ in 0..d {
                    next.push(w);
                    w += c;
                    if w >= modulus {
                        w -= modulus;
                    }
                }
            }
            table = next;
        }
        table
    }

    /// Full table of the linear map `x ↦ Σ coeffs[i]·x_i mod modulus`.
    pub fn linear(&self, coeffs: &[u64], modulus: u64) -> Vec<u64> {
        self.linear_prefix(self.radices.len(), coeffs, modulus)
    }

    /// Table of the quadratic function with `q(g_i) = gen[i]` whose
    /// polarization is `gram[i][j]`, all numerators over `modulus`.
    ///
    /// Uses `q(c + g_k) - q(c) = q(g_k) + λ(c, g_k)`; O(|H|) additions.
    pub fn quadratic(&self, gen: &[u64], gram: &[Vec<u64>], modulus: u64) -> Vec<u64> {
        let mut table = vec![0u64];
        for k in 0..self.radices.len() {
            let d = self.radices[k];
            let col: Vec<u64> = (0..k).map(|j| gram[j][k]).collect();
            let lam = self.linear_prefix(k, &col, modulus);
            let gkk = gram[k][k] % modulus;
            let mut next = Vec::with_capacity(table.len() * d);
            for (idx, &v) in table.iter().enumerate() {
                let mut w = v;
                let mut inc = (gen[k] + lam[idx]) % modulus;
                for _ in 0..d {
                    next.push(w);
                    w += inc;
                    if w >= modulus {
                        w -= modulus;
                    }
                    inc += gkk;
                    if inc >= modulus {
                        inc -= modulus;
                    }
                }
            }
            table = next;
        }
        table
    }
}

/// `H = H_1(M) ≅ coker B` together with the data needed to compute in it.
///
/// Classes are encoded in Smith coordinates: if `U·B·V = D`, the class of
/// `X ∈ Z^n` has coordinates `(U·X)_i mod d_i` over the factors `d_i > 1`.
#[derive(Clone, Debug)]
pub struct HomologyGroup {
    presentation: SurgeryPresentation,
    smith: SmithDecomposition,
    u_inv: IntMatrix,
    hermite: HermiteBasis,
    inverse: RatMatrix,
    positions: Vec<usize>,
    factors: Vec<BigInt>,
    order: BigInt,
    layout: Option<Layout>,
    kernels: OnceLock<Kernels>,
}

pub fn homology_of(p: &SurgeryPresentation) -> Result<HomologyGroup> {
    HomologyGroup::new(p.clone())
}

impl HomologyGroup {
    pub fn new(presentation: SurgeryPresentation) -> Result<Self> {
        let b = presentation.matrix();
        let smith = smith(b).map_err(|e| match e {
            Error::SingularMatrix => Error::NotRationalHomologySphere,
            e => e,
        })?;
        let diag = smith.diagonal();
        let positions: Vec<usize> = (0..diag.len()).filter(|&i| !diag[i].is_one()).collect();
        let factors: Vec<BigInt> = positions.iter().map(|&i| diag[i].clone()).collect();
        let u_inv = smith.u.unimodular_inverse()?;
        let hermite = hermite(b)?;
        let inverse = inverse_rational(b)?;
        let order = presentation.det().abs();
        let mut group = HomologyGroup {
            presentation,
            smith,
            u_inv,
            hermite,
            inverse,
            positions,
            factors,
            order,
            layout: None,
            kernels: OnceLock::new(),
        };
        group.layout = group.build_layout();
        Ok(group)
    }

    fn build_layout(&self) -> Option<Layout> {
        let size = self.order.to_usize().filter(|&s| s <= TABLE_LIMIT)?;
        let radices: Vec<usize> = self.factors.iter().map(|d| d.to_usize().unwrap()).collect();
        let mut strides = vec![1; radices.len()];
        for i in (0..radices.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * radices[i + 1];
        }
        let exponent = radices.last().copied().unwrap_or(1) as u64;
        let r = radices.len();
        let mut gram = vec![vec![0u64; r]; r];
        for i in 0..r {
            for j in 0..r {
                let l = self.linking_vectors(&self.generator_lift(i), &self.generator_lift(j));
                gram[i][j] = l.numerator_over(exponent).expect("λ denominator divides the exponent");
            }
        }
        Some(Layout { radices, strides, size, exponent, gram })
    }

    pub(crate) fn layout(&self) -> Result<&Layout> {
        self.layout.as_ref().ok_or_else(|| Error::GroupTooLarge { order: self.order.to_string() })
    }

    pub(crate) fn kernels(&self) -> &Kernels {
        self.kernels.get_or_init(|| Kernels::new(self))
    }

    pub fn presentation(&self) -> &SurgeryPresentation {
        &self.presentation
    }

    pub fn smith(&self) -> &SmithDecomposition {
        &self.smith
    }

    pub fn hermite(&self) -> &HermiteBasis {
        &self.hermite
    }

    /// Exact `B⁻¹`.
    pub fn inverse(&self) -> &RatMatrix {
        &self.inverse
    }

    pub fn order(&self) -> &BigInt {
        &self.order
    }

    /// Order as a machine integer, when the group is small enough to tabulate.
    pub fn size(&self) -> Result<usize> {
        Ok(self.layout()?.size)
    }

    /// Invariant factors `d_i > 1`, each dividing the next.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn zero(&self) -> HomologyClass {
        HomologyClass { coords: vec![BigInt::zero(); self.rank()] }
    }

    /// Class with the given Smith coordinates (reduced).
    pub fn class(&self, coords: &[BigInt]) -> Result<HomologyClass> {
        if coords.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), got: coords.len() });
        }
        Ok(self.reduce(coords.to_vec()))
    }

    fn reduce(&self, mut coords: Vec<BigInt>) -> HomologyClass {
        for (c, d) in coords.iter_mut().zip(&self.factors) {
            *c = c.mod_floor(d);
        }
        HomologyClass { coords }
    }

    fn check_class(&self, x: &HomologyClass) {
        assert_eq!(x.coords.len(), self.rank(), "class does not belong to this group");
    }

    /// Class of an integer vector under `Z^n → coker B`.
    pub fn project(&self, x: &[BigInt]) -> Result<HomologyClass> {
        let n = self.presentation.n();
        if x.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: x.len() });
        }
        let y = self.smith.u.mul_vec(x)?;
        Ok(self.reduce(self.positions.iter().map(|&i| y[i].clone()).collect()))
    }

    /// Canonical integer representative: the coset normal form modulo `Im B`.
    pub fn lift(&self, h: &HomologyClass) -> Vec<BigInt> {
        self.check_class(h);
        let n = self.presentation.n();
        let mut x = vec![BigInt::zero(); n];
        for (c, &pos) in h.coords.iter().zip(&self.positions) {
            if c.is_zero() {
                continue;
            }
            for (r, xr) in x.iter_mut().enumerate() {
                *xr += c * &self.u_inv[(r, pos)];
            }
        }
        self.hermite.normal_form(&x)
    }

    /// Integer lift of the i-th Smith generator (a column of `U⁻¹`).
    pub fn generator_lift(&self, i: usize) -> Vec<BigInt> {
        self.u_inv.column(self.positions[i])
    }

    pub fn generator(&self, i: usize) -> HomologyClass {
        let mut c = vec![BigInt::zero(); self.rank()];
        c[i] = BigInt::one();
        self.reduce(c)
    }

    /// Class of the oriented meridian of the i-th surgery component.
    ///
    /// The oriented meridian `m_i` corresponds to `-e_i` under
    /// `H ≅ coker B`; with this sign the diagonal formula
    /// `φ([m_i]) = -(1 - s_i)/(2 b_ii)` agrees with the general one.
    pub fn meridian(&self, i: usize) -> HomologyClass {
        let n = self.presentation.n();
        let mut e = vec![BigInt::zero(); n];
        e[i] = -BigInt::one();
        self.project(&e).expect("dimension matches")
    }

    pub fn add(&self, x: &HomologyClass, y: &HomologyClass) -> HomologyClass {
        self.check_class(x);
        self.check_class(y);
        self.reduce(x.coords.iter().zip(&y.coords).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self, x: &HomologyClass) -> HomologyClass {
        self.check_class(x);
        self.reduce(x.coords.iter().map(|a| -a).collect())
    }

    pub fn sub(&self, x: &HomologyClass, y: &HomologyClass) -> HomologyClass {
        self.add(x, &self.neg(y))
    }

    pub fn scale(&self, x: &HomologyClass, k: &BigInt) -> HomologyClass {
        self.check_class(x);
        self.reduce(x.coords.iter().map(|a| a * k).collect())
    }

    pub fn order_of(&self, x: &HomologyClass) -> BigInt {
        self.check_class(x);
        x.coords
            .iter()
            .zip(&self.factors)
            .fold(BigInt::one(), |acc, (c, d)| acc.lcm(&(d / d.gcd(c))))
    }

    /// `λ(X, Y) = -Xᵀ B⁻¹ Y mod 1` on integer representatives.
    pub fn linking_vectors(&self, x: &[BigInt], y: &[BigInt]) -> QmodZ {
        QmodZ::from_rational(&-self.inverse.bilinear(x, y))
    }

    /// Linking pairing `λ_M(x, y)`.
    pub fn linking(&self, x: &HomologyClass, y: &HomologyClass) -> QmodZ {
        self.linking_vectors(&self.lift(x), &self.lift(y))
    }

    /// All elements, in index order (lexicographic in Smith coordinates).
    pub fn elements(&self) -> Result<Vec<HomologyClass>> {
        let layout = self.layout()?;
        Ok((0..layout.size).map(|i| self.class_at_unchecked(layout, i)).collect())
    }

    pub fn index_of(&self, x: &HomologyClass) -> Result<usize> {
        self.check_class(x);
        let layout = self.layout()?;
        let c: Vec<usize> = x.coords.iter().map(|c| c.to_usize().unwrap()).collect();
        Ok(layout.encode(&c))
    }

    pub fn class_at(&self, idx: usize) -> Result<HomologyClass> {
        let layout = self.layout()?;
        assert!(idx < layout.size, "index out of range");
        Ok(self.class_at_unchecked(layout, idx))
    }

    fn class_at_unchecked(&self, layout: &Layout, idx: usize) -> HomologyClass {
        HomologyClass { coords: layout.decode(idx).into_iter().map(BigInt::from).collect() }
    }

    /// Numerators of `x ↦ λ(h, x)` over the exponent, for every element.
    pub(crate) fn linking_row(&self, h: &HomologyClass) -> Result<Vec<u64>> {
        let layout = self.layout()?;
        let e = layout.exponent;
        let coeffs: Vec<u64> = (0..self.rank())
            .map(|k| {
                h.coords.iter().enumerate().fold(0u64, |acc, (i, c)| {
                    (acc + c.to_u64().unwrap() % e * layout.gram[i][k]) % e
                })
            })
            .collect();
        Ok(layout.linear(&coeffs, e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    fn group(rows: &[Vec<i64>]) -> HomologyGroup {
        HomologyGroup::new(SurgeryPresentation::from_rows(rows).unwrap()).unwrap()
    }

    #[test]
    fn lens_seven() {
        let g = group(&[vec![7]]);
        assert_eq!(g.order(), &BigInt::from(7));
        assert_eq!(g.invariant_factors(), &[BigInt::from(7)]);
        assert_eq!(g.project(&ints(&[8])).unwrap(), g.class(&ints(&[1])).unwrap());
        assert!(g.project(&ints(&[7])).unwrap().is_zero());
        let m = g.project(&ints(&[1])).unwrap();
        assert_eq!(g.linking(&m, &m), QmodZ::new(6, 7));
        for x in g.elements().unwrap() {
            assert_eq!(g.project(&g.lift(&x)).unwrap(), x);
            assert!(g.linking(&g.zero(), &x).is_zero());
        }
    }

    #[test]
    fn trivial_group() {
        let g = group(&[vec![1]]);
        assert!(g.is_trivial());
        assert_eq!(g.elements().unwrap().len(), 1);
        assert_eq!(g.lift(&g.zero()), ints(&[0]));
    }

    #[test]
    fn chain_presentation() {
        let g = group(&[vec![4, 1], vec![1, 2]]);
        assert_eq!(g.invariant_factors(), &[BigInt::from(7)]);
        let m2 = g.project(&ints(&[0, 1])).unwrap();
        assert_eq!(g.order_of(&m2), BigInt::from(7));
        // the generator has order 7: repeated addition returns to 0 exactly at 7
        let mut acc = g.zero();
        for k in 1..=7 {
            acc = g.add(&acc, &m2);
            assert_eq!(acc.is_zero(), k == 7);
        }
        assert_eq!(g.linking(&m2, &m2), QmodZ::new(3, 7));
        assert_eq!(g.project(&g.lift(&m2)).unwrap(), m2);
    }

    #[test]
    fn image_of_b_is_zero() {
        let g = group(&[vec![-2, 1, 0], vec![1, -3, 1], vec![0, 1, 5]]);
        let b = g.presentation().matrix();
        let w = b.mul_vec(&ints(&[1, 1, 1])).unwrap();
        assert!(g.project(&w).unwrap().is_zero());
        assert!(matches!(g.project(&ints(&[1])), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn meridian_sign() {
        let g = group(&[vec![7]]);
        assert_eq!(g.meridian(0), g.class(&ints(&[6])).unwrap());
    }

    #[test]
    fn fast_linking_row_agrees() {
        let g = group(&[vec![2, 1, 1], vec![1, 4, 0], vec![1, 0, 6]]);
        let layout = g.layout().unwrap();
        let els = g.elements().unwrap();
        for h in &els {
            let row = g.linking_row(h).unwrap();
            for (i, x) in els.iter().enumerate() {
                assert_eq!(QmodZ::new(row[i], layout.exponent), g.linking(h, x));
            }
        }
    }
}
