//! Linking pairings, Spin^c structures and quadratic functions of rational
//! homology 3-spheres presented by surgery on framed links.
//!
//! The input is always a [`SurgeryPresentation`]: a symmetric integer
//! linking matrix `B` with `det B != 0`. From it the crate computes
//!
//! * the group `H = coker B` and its linking pairing `λ = -B⁻¹ mod 1`,
//! * Spin^c structures as Chern vectors and as charges, with the
//!   conversion `s_j = 1 - k_j + Σ_i b_ij` between them,
//! * the quadratic functions `φ_σ` (from Chern vectors) and `q_σ` (from
//!   charges, for diagonal `B`), their Gauss sums and phases `d_σ`,
//! * from externally supplied torsion tables, the constants `c_σ` and the
//!   invariant `c(M) = c_σ - d_σ`.

pub mod cli;
pub mod error;
pub mod exactlin;
pub mod homology;
pub mod quad;
pub mod spinc;
pub mod torsion;

pub use error::{Error, Result};
pub use homology::{HomologyClass, HomologyGroup, QmodZ, SurgeryPresentation};
pub use quad::QuadraticFunction;
pub use spinc::{Charge, ChernVector, SpincClass, SpincSet};
