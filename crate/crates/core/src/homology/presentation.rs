use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlin::IntMatrix;

/// Surgery presentation of a rational homology sphere: the symmetric linking
/// matrix of the framed link, framings on the diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurgeryPresentation {
    b: IntMatrix,
    det: BigInt,
}

impl SurgeryPresentation {
    pub fn new(b: IntMatrix) -> Result<Self> {
        if !b.is_square() {
            return Err(Error::NotSquare { rows: b.rows(), cols: b.cols() });
        }
        if let Some((row, col)) = b.first_asymmetry() {
            return Err(Error::NotSymmetric { row, col });
        }
        let det = b.determinant()?;
        if det.is_zero() {
            return Err(Error::NotRationalHomologySphere);
        }
        Ok(SurgeryPresentation { b, det })
    }

    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Result<Self> {
        Self::new(IntMatrix::from_rows(rows))
    }

    /// Algebraically split presentation with the given framings.
    pub fn split<T: Into<BigInt> + Copy>(framings: &[T]) -> Result<Self> {
        Self::new(IntMatrix::diagonal_from(framings))
    }

    pub fn n(&self) -> usize {
        self.b.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.b
    }

    pub fn det(&self) -> &BigInt {
        &self.det
    }

    pub fn framing(&self, i: usize) -> &BigInt {
        &self.b[(i, i)]
    }

    /// Diagonal linking matrix, i.e. an algebraically split link.
    pub fn is_split(&self) -> bool {
        self.b.is_diagonal()
    }
}
