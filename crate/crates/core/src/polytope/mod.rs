//! Divisor polytopes, normalized volumes, and relative degrees and volumes on
//! projective-space fibres.

mod degree;
mod volume;

pub use degree::{relative_degree_on_p, relative_volume_on_p, ProjectiveDivisorData};
pub use volume::{denominator, divisor_polytope, normalized_volume, LatticePolytope};
