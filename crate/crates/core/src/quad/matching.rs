use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::homology::{HomologyClass, HomologyGroup, QmodZ};

/// Group isomorphism `ψ: H₁ → H₂` with `λ₂(ψx, ψy) = λ₁(x, y)`, given by the
/// images of the Smith generators of `H₁`.
#[derive(Clone, Debug)]
pub struct Isometry {
    source: Arc<HomologyGroup>,
    target: Arc<HomologyGroup>,
    images: Vec<HomologyClass>,
}

impl Isometry {
    pub fn source(&self) -> &Arc<HomologyGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<HomologyGroup> {
        &self.target
    }

    pub fn images(&self) -> &[HomologyClass] {
        &self.images
    }

    pub fn apply(&self, x: &HomologyClass) -> HomologyClass {
        x.coords()
            .iter()
            .zip(&self.images)
            .fold(self.target.zero(), |acc, (c, img)| {
                self.target.add(&acc, &self.target.scale(img, c))
            })
    }

    /// `map[i]` is the target index of the source element with index `i`.
    pub fn index_map(&self) -> Result<Vec<usize>> {
        let src = self.source.layout()?;
        let tgt = self.target.layout()?;
        let steps: Vec<usize> =
            self.images.iter().map(|h| self.target.index_of(h)).collect::<Result<_>>()?;
        let mut table = vec![0usize];
        for (k, &step) in steps.iter().enumerate() {
            let mut next = Vec::with_capacity(table.len() * src.radices[k]);
            for &v in &table {
                let mut w = v;
                for _ in 0..src.radices[k] {
                    next.push(w);
                    w = tgt.add(w, step);
                }
            }
            table = next;
        }
        Ok(table)
    }

    /// Exhaustive check that the map is bijective and preserves λ.
    pub fn verify(&self) -> Result<bool> {
        let map = self.index_map()?;
        let mut seen = vec![false; map.len()];
        for &j in &map {
            if std::mem::replace(&mut seen[j], true) {
                return Ok(false);
            }
        }
        let els = self.source.elements()?;
        for x in &els {
            let r1 = self.source.linking_row(x)?;
            let r2 = self.target.linking_row(&self.target.class_at(map[self.source.index_of(x)?])?)?;
            if (0..map.len()).any(|i| r1[i] != r2[map[i]]) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// First isometry `H(p1) → H(p2)` in lexicographic order of the generator
/// images, or `NoMatch`.
pub fn match_presentations(g1: &Arc<HomologyGroup>, g2: &Arc<HomologyGroup>) -> Result<Isometry> {
    if g1.invariant_factors() != g2.invariant_factors() {
        return Err(Error::NoMatch);
    }
    let l1 = g1.layout()?;
    let l2 = g2.layout()?;
    let e = l2.exponent;
    let r = g1.rank();

    // λ₂(x, x) for every x, numerators over e
    let gram2: Vec<Vec<u64>> =
        l2.gram.iter().map(|row| row.iter().map(|v| 2 * v % e).collect()).collect();
    let diag: Vec<u64> = (0..r).map(|i| l2.gram[i][i]).collect();
    let self_link = l2.quadratic(&diag, &gram2, e);

    // candidates per generator: matching order and self-linking
    let candidates: Vec<Vec<usize>> = (0..r)
        .map(|i| {
            let d = l1.radices[i];
            (0..l2.size)
                .filter(|&x| self_link[x] == l1.gram[i][i])
                .filter(|&x| order_of(&l2.decode(x), &l2.radices) == d)
                .collect()
        })
        .collect();

    let mut chosen: Vec<usize> = Vec::with_capacity(r);
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(r);
    if search(g2, l1.gram.as_slice(), &candidates, &mut chosen, &mut rows)? {
        let images = chosen.iter().map(|&x| g2.class_at(x)).collect::<Result<_>>()?;
        Ok(Isometry { source: g1.clone(), target: g2.clone(), images })
    } else {
        Err(Error::NoMatch)
    }
}

fn order_of(c: &[usize], radices: &[usize]) -> usize {
    c.iter().zip(radices).fold(1, |acc, (&ci, &d)| {
        let o = d / num_integer::gcd(ci, d);
        num_integer::lcm(acc, o)
    })
}

fn search(
    g2: &HomologyGroup,
    gram1: &[Vec<u64>],
    candidates: &[Vec<usize>],
    chosen: &mut Vec<usize>,
    rows: &mut Vec<Vec<u64>>,
) -> Result<bool> {
    let i = chosen.len();
    if i == candidates.len() {
        return Ok(true);
    }
    for &x in &candidates[i] {
        if (0..i).all(|j| rows[j][x] == gram1[j][i]) {
            chosen.push(x);
            rows.push(g2.linking_row(&g2.class_at(x)?)?);
            if search(g2, gram1, candidates, chosen, rows)? {
                return Ok(true);
            }
            chosen.pop();
            rows.pop();
        }
    }
    Ok(false)
}

/// λ table of a group in index order, as exact values; used by reports.
pub(crate) fn linking_table(g: &HomologyGroup) -> Result<Vec<Vec<QmodZ>>> {
    let e = BigInt::from(g.layout()?.exponent);
    g.elements()?
        .iter()
        .map(|h| Ok(g.linking_row(h)?.into_iter().map(|v| QmodZ::new(v, e.clone())).collect()))
        .collect()
}
