use std::fmt;

use num_traits::Signed;

use super::model::TowerModel;
use super::spec::Move;
use crate::lattice::{Cone, LatticeVector};
use crate::toric::Character;
use crate::{Error, Result};

/// Local form of `V_i -> V_{i-1}` along the torus orbit of a cone.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LocalModelDescriptor {
    /// Smooth over the base; no new boundary component passes through.
    SmoothPlain,
    /// Smooth over the base, on the vanishing section of the new coordinate.
    SmoothOnSection,
    /// Relative node `α α' = λ`: both branch coordinates vanish on the orbit.
    Node { lambda: Character },
}

impl fmt::Display for LocalModelDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalModelDescriptor::SmoothPlain => write!(f, "smooth_plain"),
            LocalModelDescriptor::SmoothOnSection => write!(f, "smooth_on_section"),
            LocalModelDescriptor::Node { lambda } => write!(f, "node({lambda})"),
        }
    }
}

/// Classifies the orbit of `cone` in the level-`level` fan.
///
/// On the orbit of `τ` a character `χ^u` vanishes iff `<u, w> > 0` for `w` in
/// the relative interior of `τ`, i.e. iff it is positive on some ray. For a
/// node move, `α` has exponent `e_new` and `α' = λ / α` has `(m, -1)`.
pub fn local_model_at(
    model: &TowerModel,
    level: usize,
    cone: &Cone,
) -> Result<LocalModelDescriptor> {
    if level == 1 {
        return Err(Error::BaseLevel);
    }
    let tower_level = model.level(level)?;
    let fan = &tower_level.fan;
    if cone.ambient_dim() != fan.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: fan.ambient_dim(),
            found: cone.ambient_dim(),
        });
    }
    if !fan.contains_cone(cone) {
        return Err(Error::ConeNotInFan {
            cone: cone.clone(),
            level,
        });
    }
    let n = fan.ambient_dim();
    let new_ray = LatticeVector::unit(n, n - 1);
    let step = tower_level.step.as_ref().ok_or(Error::BaseLevel)?;
    match step {
        Move::Product => Ok(if cone.generators().contains(&new_ray) {
            LocalModelDescriptor::SmoothOnSection
        } else {
            LocalModelDescriptor::SmoothPlain
        }),
        Move::Node { .. } => {
            let lambda = step.character().expect("node move has a character");
            let m = lambda.exponents();
            let mut alpha_vanishes = false;
            let mut alpha_prime_vanishes = false;
            for r in cone.generators() {
                let height = &r.entries()[n - 1];
                let base = r.truncate(n - 1);
                alpha_vanishes |= height.is_positive();
                alpha_prime_vanishes |= (m.dot(&base) - height).is_positive();
            }
            Ok(if alpha_vanishes && alpha_prime_vanishes {
                LocalModelDescriptor::Node { lambda }
            } else {
                LocalModelDescriptor::SmoothPlain
            })
        }
    }
}
