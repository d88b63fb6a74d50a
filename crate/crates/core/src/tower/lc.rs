use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::model::{build_model_with_limits, TowerModel};
use super::projective::{projective_model, ProjectiveModel};
use super::spec::TowerSpec;
use crate::lattice::{Fan, LatticeVector};
use crate::report::{CheckReport, CheckViolation};
use crate::toric::{canonical_divisor, cartier_data, log_discrepancy_with_data, CartierData};
use crate::{Error, Limits, Result};

const CHECK: &str = "lc-place-transfer";

/// Largest coefficient used when sampling vectors as combinations of rays.
const SAMPLE_COEFFICIENT_MAX: u32 = 10;

/// Draws primitive vectors from the support of `fan`: pick a maximal cone
/// uniformly, combine its rays with coefficients in `0..=10`, primitivize.
/// Zero combinations are redrawn; fans with no rays yield nothing.
pub fn sample_support_vectors<R: Rng>(fan: &Fan, count: usize, rng: &mut R) -> Vec<LatticeVector> {
    let cones: Vec<_> = fan
        .maximal_cones()
        .iter()
        .filter(|c| !c.is_zero())
        .collect();
    if cones.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let cone = cones[rng.random_range(0..cones.len())];
        let mut v = LatticeVector::zero(fan.ambient_dim());
        for r in cone.generators() {
            let k = rng.random_range(0..=SAMPLE_COEFFICIENT_MAX);
            v = &v + &r.scale(&BigInt::from(k));
        }
        if let Ok(p) = v.primitive() {
            out.push(p);
        }
    }
    out
}

/// Checks that every ray of the top fan and `samples` random primitive
/// vectors of its support are lc places of both `(V_d, C_d)` and `(P, G)`:
/// both log discrepancies must be exactly 0.
pub fn lc_place_transfer_check(spec: &TowerSpec, samples: usize, seed: u64) -> Result<CheckReport> {
    lc_place_transfer_check_with_limits(spec, samples, seed, &Limits::default())
}

pub fn lc_place_transfer_check_with_limits(
    spec: &TowerSpec,
    samples: usize,
    seed: u64,
    limits: &Limits,
) -> Result<CheckReport> {
    let model = build_model_with_limits(spec, limits)?;
    let proj = projective_model(spec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vectors = model.top().fan.rays().to_vec();
    vectors.extend(sample_support_vectors(&model.top().fan, samples, &mut rng));
    Ok(lc_transfer_on_vectors(&model, &proj, &vectors))
}

fn k_plus_boundary(fan: &Fan, boundary: &crate::toric::ToricDivisor) -> Result<CartierData> {
    cartier_data(fan, &(&canonical_divisor(fan) + boundary))
}

/// The transfer check on explicit witness vectors. Vectors with no centre on
/// the top level are skipped.
pub fn lc_transfer_on_vectors(
    model: &TowerModel,
    proj: &ProjectiveModel,
    vectors: &[LatticeVector],
) -> CheckReport {
    let mut report = CheckReport::default();
    let top = model.top();
    let level = top.index;
    let tower_data = match k_plus_boundary(&top.fan, &top.boundary) {
        Ok(d) => d,
        Err(e) => {
            report.fail(CheckViolation::new(CHECK, format!("K + C on V_d: {e}")).at_level(level));
            return report;
        }
    };
    let proj_data = match k_plus_boundary(&proj.fan, &proj.boundary) {
        Ok(d) => d,
        Err(e) => {
            report.fail(CheckViolation::new(CHECK, format!("K + G on P: {e}")));
            return report;
        }
    };
    for e in vectors {
        let on_tower = match log_discrepancy_with_data(&tower_data, e) {
            Ok(a) => a.value,
            Err(Error::NoCentre { .. }) | Err(Error::ZeroVector) => {
                report.skip(Some(e.clone()), "no centre on V_d");
                continue;
            }
            Err(err) => {
                report.fail(
                    CheckViolation::new(CHECK, err.to_string())
                        .at_level(level)
                        .with_witness(e.clone()),
                );
                continue;
            }
        };
        let on_proj = proj
            .identification
            .apply(e)
            .and_then(|image| log_discrepancy_with_data(&proj_data, &image));
        match on_proj {
            Ok(a) => report.record(on_tower.is_zero() && a.value.is_zero(), || {
                CheckViolation::new(
                    CHECK,
                    format!("a(E, V_d, C_d) = {on_tower}, a(E, P, G) = {}", a.value),
                )
                .at_level(level)
                .with_witness(e.clone())
            }),
            Err(err) => report.fail(
                CheckViolation::new(CHECK, format!("on P: {err}"))
                    .at_level(level)
                    .with_witness(e.clone()),
            ),
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::{build_model, Move};

    #[test]
    fn a1_node_has_lc_centre_on_both_sides() {
        let spec = TowerSpec::new(1, vec![Move::node(&[], &[2])]);
        let model = build_model(&spec).unwrap();
        let proj = projective_model(&spec).unwrap();
        let report = lc_transfer_on_vectors(&model, &proj, &[LatticeVector::from_i64s(&[1, 1])]);
        assert_eq!((report.checked, report.passed), (1, 1));
    }

    #[test]
    fn rays_and_samples_pass() {
        let spec = TowerSpec::new(
            2,
            vec![
                Move::node(&[], &[1, 2]),
                Move::Product,
                Move::node(&[1, -1], &[1, 0]),
            ],
        );
        let report = lc_place_transfer_check(&spec, 30, 7).unwrap();
        assert!(report.is_clean(), "{:?}", report.violations);
        assert!(report.checked >= 30);
    }

    #[test]
    fn vectors_without_centre_are_skipped() {
        let spec = TowerSpec::new(1, vec![Move::node(&[], &[1])]);
        let model = build_model(&spec).unwrap();
        let proj = projective_model(&spec).unwrap();
        let report = lc_transfer_on_vectors(&model, &proj, &[LatticeVector::from_i64s(&[0, 1])]);
        assert_eq!(report.checked, 0);
        assert_eq!(report.skipped.len(), 1);
        assert_eq!(report.skipped[0].reason, "no centre on V_d");
    }

    #[test]
    fn sampling_is_deterministic() {
        let fan = Fan::affine_space(3);
        let a = sample_support_vectors(&fan, 20, &mut ChaCha8Rng::seed_from_u64(1));
        let b = sample_support_vectors(&fan, 20, &mut ChaCha8Rng::seed_from_u64(1));
        assert_eq!(a, b);
        assert!(a.iter().all(|v| v.is_primitive() && v.is_nonnegative()));
        assert!(
            sample_support_vectors(&Fan::torus(2), 5, &mut ChaCha8Rng::seed_from_u64(1)).is_empty()
        );
    }
}
