//! The group `H = coker B`, exact Q/Z arithmetic and the linking pairing.
//!
//! Sign convention: `λ(x, y) = -Xᵀ B⁻¹ Y mod 1`. This is the sign for which
//! the quadratic functions built from Chern vectors refine `λ`; the
//! literature is not uniform here.

mod group;
mod presentation;
mod qmodz;

pub use group::{homology_of, HomologyClass, HomologyGroup, TABLE_LIMIT};
pub use presentation::SurgeryPresentation;
pub use qmodz::{parse_rational, ParseRationalError, QmodZ};
