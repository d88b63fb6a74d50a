//! Special toric towers.
//!
//! A tower starts from `V_1 = A^p` with its coordinate boundary and adds one
//! level per move:
//!
//! * a product move takes `V_{i-1} x A^1` with the new coordinate hyperplane
//!   added to the boundary;
//! * a node move with character `λ` takes the subvariety `α α' = λ` of
//!   `V_{i-1}° x A^2`, where `V_{i-1}°` is the locus on which `λ` is regular.
//!
//! Lattices are `N_i = Z^(p+i-1)` with coordinates `(t_1, ..., t_p, α_2, ...,
//! α_i)`; level `i` appends one coordinate to level `i-1`, and `V_i -> V_{i-1}`
//! is the coordinate projection.

mod base_change;
mod lc;
mod local_model;
mod model;
mod projective;
mod spec;

pub use base_change::{base_change_to_curve, CurveGermData};
pub use lc::{
    lc_place_transfer_check, lc_place_transfer_check_with_limits, lc_transfer_on_vectors,
    sample_support_vectors,
};
pub use local_model::{local_model_at, LocalModelDescriptor};
pub use model::{
    build_model, build_model_with_limits, node_lift, product_lift, semigroup_cone,
    torus_splitting_check, TowerLevel, TowerModel,
};
pub use projective::{projective_model, ProjectiveModel};
pub use spec::{validate_tower, Move, TowerSpec, TowerViolation};
