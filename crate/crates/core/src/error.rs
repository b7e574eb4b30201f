use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is singular (determinant 0)")]
    SingularMatrix,

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("linking matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("not a rational homology sphere: linking matrix has determinant 0")]
    NotRationalHomologySphere,

    #[error("invalid Chern vector {vector}: entry {index} must have the parity of the framing b_{index}{index}")]
    InvalidChernVector { vector: String, index: usize },

    #[error("invalid charge {vector}: entry {index} must be congruent to 1 + (row sum off the diagonal) mod 2")]
    InvalidCharge { vector: String, index: usize },

    #[error("presentation is not algebraically split (linking matrix is not diagonal)")]
    NotAlgebraicallySplit,

    #[error("inconsistent quadratic data: {0}")]
    ConsistencyError(String),

    #[error("Gauss sum is degenerate: |S|^2 = {modulus_squared}, expected {order}")]
    DegenerateFunction { modulus_squared: f64, order: u64 },

    #[error("could not reconstruct the Gauss phase: residual {residual:e} exceeds tolerance {tolerance:e}")]
    ReconstructionFailed { residual: f64, tolerance: f64 },

    #[error("no isometry between the linking pairings")]
    NoMatch,

    #[error("incomplete torsion table: expected {expected} values, got {got}")]
    IncompleteTable { expected: usize, got: usize },

    #[error("torsion axiom fails at h1 = {h1}, h2 = {h2}")]
    AxiomViolation { h1: String, h2: String },

    #[error("inconsistent torsion family ({identity}): {detail}")]
    InconsistentFamily { identity: String, detail: String },

    #[error("group of order {order} is too large to tabulate")]
    GroupTooLarge { order: String },

    #[error("unknown Spin^c label '{0}'")]
    UnknownLabel(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }
}
