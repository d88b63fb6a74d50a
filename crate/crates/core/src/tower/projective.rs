use super::spec::{validate_tower, TowerSpec};
use crate::lattice::{Fan, IntMatrix};
use crate::toric::{boundary_divisor, ToricDivisor};
use crate::{Error, Result};

/// The couple `(P = P^{d-1} x A^p, G)` that the top level of a tower maps to
/// birationally, with the identification of lattices `N_d -> N_P`.
///
/// Both lattices use the coordinates `(t_1, ..., t_p, α_2, ..., α_d)` of the
/// common torus, so the identification is the identity matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveModel {
    pub fan: Fan,
    pub identification: IntMatrix,
    /// `G`: the coordinate hyperplanes of `P^{d-1}` plus the pullback of `C_1`.
    pub boundary: ToricDivisor,
}

pub fn projective_model(spec: &TowerSpec) -> Result<ProjectiveModel> {
    let report = validate_tower(spec);
    if !report.is_valid() {
        let msgs: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
        return Err(Error::InvalidTower(msgs.join("; ")));
    }
    let fibre = spec.levels() - 1;
    let fan = Fan::affine_space(spec.base_dim).product(&Fan::projective_space(fibre));
    Ok(ProjectiveModel {
        boundary: boundary_divisor(&fan),
        identification: IntMatrix::identity(fan.ambient_dim()),
        fan,
    })
}
