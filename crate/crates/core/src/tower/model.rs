use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::spec::{validate_tower, Move, TowerSpec};
use crate::lattice::{dual_cone_with_limits, snf, Cone, Fan, IntMatrix, LatticeVector};
use crate::report::{CheckReport, CheckViolation};
use crate::toric::{boundary_divisor, regularity_subfan, ToricDivisor};
use crate::{Error, Limits, Result};

/// One realized level `(V_i, C_i)` of a tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerLevel {
    /// 1-based level index.
    pub index: usize,
    pub fan: Fan,
    /// `C_i`: every torus-invariant prime divisor.
    pub boundary: ToricDivisor,
    /// `N_i -> N_{i-1}`; absent on level 1.
    pub projection: Option<IntMatrix>,
    /// The move that produced this level; absent on level 1.
    pub step: Option<Move>,
}

/// Per-level fans of a special toric tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerModel {
    spec: TowerSpec,
    levels: Vec<TowerLevel>,
}

impl TowerModel {
    /// Assembles a model from explicit levels without checking them. Used to
    /// feed hand-built data to [`torus_splitting_check`].
    pub fn from_levels(spec: TowerSpec, levels: Vec<TowerLevel>) -> Self {
        TowerModel { spec, levels }
    }

    pub fn spec(&self) -> &TowerSpec {
        &self.spec
    }

    pub fn levels(&self) -> &[TowerLevel] {
        &self.levels
    }

    pub fn level(&self, index: usize) -> Result<&TowerLevel> {
        index
            .checked_sub(1)
            .and_then(|i| self.levels.get(i))
            .ok_or(Error::LevelOutOfRange {
                level: index,
                levels: self.levels.len(),
            })
    }

    pub fn top(&self) -> &TowerLevel {
        self.levels.last().expect("a model has at least one level")
    }
}

/// `σ x {0}` together with the new coordinate ray: the cone of `σ x A^1`.
pub fn product_lift(sigma: &Cone) -> Cone {
    let n = sigma.ambient_dim();
    let mut gens: Vec<LatticeVector> = sigma
        .generators()
        .iter()
        .map(|u| u.extend(&[BigInt::zero()]))
        .collect();
    gens.push(LatticeVector::unit(n + 1, n));
    Cone::new(n + 1, gens).expect("dimensions agree")
}

/// `σ~ = {(v, s) : v in σ, 0 <= s <= <m, v>}` for a cone `σ` on which
/// `<m, ·> >= 0`. Its extreme rays are `(u, 0)` and `(u, <m, u>)` for the rays
/// `u` of `σ` (the two coincide when `<m, u> = 0`).
pub fn node_lift(sigma: &Cone, m: &LatticeVector) -> Cone {
    let mut gens = Vec::with_capacity(2 * sigma.generators().len());
    for u in sigma.generators() {
        let h = m.dot(u);
        debug_assert!(!h.is_negative(), "character not regular on the cone");
        if h.is_positive() {
            gens.push(u.extend(&[h]));
        }
        gens.push(u.extend(&[BigInt::zero()]));
    }
    Cone::new(sigma.ambient_dim() + 1, gens).expect("dimensions agree")
}

/// The cone of the semigroup of `k[σ^∨ ∩ M][α, α'] / (α α' - λ)`: generated by
/// `σ^∨ x {0}`, the exponent `e_new` of `α` and the exponent `(m, -1)` of
/// `α' = λ / α`. Generators are not reduced.
pub fn semigroup_cone(sigma: &Cone, m: &LatticeVector, limits: &Limits) -> Result<Cone> {
    let n = sigma.ambient_dim();
    let dual = dual_cone_with_limits(sigma, limits)?;
    let mut gens: Vec<LatticeVector> = dual
        .generators()
        .iter()
        .map(|g| g.extend(&[BigInt::zero()]))
        .collect();
    gens.push(LatticeVector::unit(n + 1, n));
    gens.push(m.extend(&[-BigInt::one()]));
    Cone::new(n + 1, gens)
}

pub fn build_model(spec: &TowerSpec) -> Result<TowerModel> {
    build_model_with_limits(spec, &Limits::default())
}

pub fn build_model_with_limits(spec: &TowerSpec, limits: &Limits) -> Result<TowerModel> {
    let report = validate_tower(spec);
    if !report.is_valid() {
        let msgs: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
        return Err(Error::InvalidTower(msgs.join("; ")));
    }
    limits.check_dim(spec.top_dim())?;

    let base = Fan::affine_space(spec.base_dim);
    let mut levels = vec![TowerLevel {
        index: 1,
        boundary: boundary_divisor(&base),
        fan: base,
        projection: None,
        step: None,
    }];
    for (k, mv) in spec.moves.iter().enumerate() {
        let below = &levels[k].fan;
        let n = below.ambient_dim();
        let cones: Vec<Cone> = match mv {
            Move::Product => below.maximal_cones().iter().map(product_lift).collect(),
            Move::Node { .. } => {
                let lambda = mv.character().expect("node move has a character");
                let regular = regularity_subfan(below, &lambda)?;
                regular
                    .maximal_cones()
                    .iter()
                    .map(|sigma| node_lift(sigma, lambda.exponents()))
                    .collect()
            }
        };
        let fan = Fan::new(n + 1, cones)?;
        limits.check_rays(fan.rays().len())?;
        levels.push(TowerLevel {
            index: k + 2,
            boundary: boundary_divisor(&fan),
            fan,
            projection: Some(IntMatrix::coordinate_projection(n + 1, n)),
            step: Some(mv.clone()),
        });
    }
    Ok(TowerModel {
        spec: spec.clone(),
        levels,
    })
}

/// Fan-level checks of `T_{V_i} = T_{V_{i-1}} x T_{A^1}` and of the fibres
/// over the torus: at each level the projection is a surjection with kernel
/// `Z`, every cone maps into a cone below, and at most one ray of the fan
/// lies in the kernel (the fibre over the torus is a torus or `A^1`).
pub fn torus_splitting_check(model: &TowerModel) -> CheckReport {
    const CHECK: &str = "torus-splitting";
    let mut report = CheckReport::default();
    for pair in model.levels().windows(2) {
        let (below, level) = (&pair[0], &pair[1]);
        let i = level.index;
        let (n_below, n) = (below.fan.ambient_dim(), level.fan.ambient_dim());

        report.record(n == n_below + 1, || {
            CheckViolation::new(CHECK, format!("rank {n} is not rank {n_below} + 1")).at_level(i)
        });

        let Some(proj) = &level.projection else {
            report.fail(CheckViolation::new(CHECK, "missing projection").at_level(i));
            continue;
        };
        if proj.rows() != n_below || proj.cols() != n {
            report.fail(
                CheckViolation::new(
                    CHECK,
                    format!("projection has shape {}x{}", proj.rows(), proj.cols()),
                )
                .at_level(i),
            );
            continue;
        }
        let (s, _, _) = snf(proj);
        let surjective_with_rank_one_kernel = (0..n_below).all(|k| s.get(k, k).is_one());
        report.record(surjective_with_rank_one_kernel, || {
            CheckViolation::new(
                CHECK,
                format!("projection {proj} is not onto with kernel Z"),
            )
            .at_level(i)
        });
        report.record(
            *proj == IntMatrix::coordinate_projection(n, n_below),
            || {
                CheckViolation::new(CHECK, "projection is not the coordinate projection")
                    .at_level(i)
            },
        );

        for sigma in level.fan.maximal_cones() {
            let images: Vec<LatticeVector> = sigma
                .generators()
                .iter()
                .map(|u| proj.apply(u).expect("shape checked"))
                .collect();
            let lands = below.fan.maximal_cones().iter().any(|tau| {
                images
                    .iter()
                    .all(|w| tau.contains(w).expect("dimensions agree"))
            });
            report.record(lands, || {
                CheckViolation::new(CHECK, format!("cone {sigma} maps into no cone below"))
                    .at_level(i)
            });
        }

        let fibre_rays: Vec<&LatticeVector> = level
            .fan
            .rays()
            .iter()
            .filter(|r| proj.apply(r).map(|w| w.is_zero()).unwrap_or(false))
            .collect();
        report.record(fibre_rays.len() <= 1, || {
            let listed: Vec<String> = fibre_rays.iter().map(|r| r.to_string()).collect();
            CheckViolation::new(
                CHECK,
                format!("fibre over the torus has rays {}", listed.join(", ")),
            )
            .at_level(i)
        });
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::dual_cone;

    fn v(x: &[i64]) -> LatticeVector {
        LatticeVector::from_i64s(x)
    }

    fn cone(dim: usize, gens: &[&[i64]]) -> Cone {
        Cone::from_i64s(dim, gens).unwrap()
    }

    #[test]
    fn node_on_t_gives_the_plane() {
        let model = build_model(&TowerSpec::new(1, vec![Move::node(&[], &[1])])).unwrap();
        let top = &model.top().fan;
        assert_eq!(top.maximal_cones(), &[cone(2, &[&[1, 0], &[1, 1]])]);
        // smooth: the ray matrix is unimodular
        let m = IntMatrix::from_rows(2, top.maximal_cones()[0].generators()).unwrap();
        assert!(m.is_unimodular());
    }

    #[test]
    fn node_on_t_squared_gives_a1() {
        let model = build_model(&TowerSpec::new(1, vec![Move::node(&[], &[2])])).unwrap();
        assert_eq!(
            model.top().fan.maximal_cones(),
            &[cone(2, &[&[1, 0], &[1, 2]])]
        );
        // the dual is the semigroup cone generated by (1,0), (0,1), (2,-1)
        let sigma = &model.top().fan.maximal_cones()[0];
        let semigroup = cone(2, &[&[1, 0], &[0, 1], &[2, -1]]);
        assert!(dual_cone(sigma).unwrap().equals_as_set(&semigroup).unwrap());
    }

    #[test]
    fn product_gives_the_orthant() {
        let model = build_model(&TowerSpec::new(1, vec![Move::Product])).unwrap();
        assert_eq!(model.top().fan, Fan::affine_space(2));
        assert_eq!(
            model.top().boundary,
            boundary_divisor(&Fan::affine_space(2))
        );
    }

    #[test]
    fn negative_exponent_restricts_to_regular_locus() {
        // λ = t_1 t_2^{-1} is regular only away from t_2 = 0
        let model = build_model(&TowerSpec::new(2, vec![Move::node(&[], &[1, -1])])).unwrap();
        assert_eq!(
            model.top().fan.maximal_cones(),
            &[cone(3, &[&[1, 0, 0], &[1, 0, 1]])]
        );
    }

    #[test]
    fn trivial_character_keeps_the_fan_flat() {
        let model = build_model(&TowerSpec::new(1, vec![Move::node(&[], &[0])])).unwrap();
        assert_eq!(model.top().fan.maximal_cones(), &[cone(2, &[&[1, 0]])]);
        assert!(torus_splitting_check(&model).is_clean());
    }

    #[test]
    fn node_lift_matches_semigroup_presentation() {
        let limits = Limits::default();
        let sigma = cone(2, &[&[1, 0], &[1, 3]]);
        let m = v(&[3, -1]);
        let lifted = node_lift(&sigma, &m);
        let dual = dual_cone(&lifted).unwrap();
        assert!(dual
            .equals_as_set(&semigroup_cone(&sigma, &m, &limits).unwrap())
            .unwrap());
    }

    #[test]
    fn levels_validate_and_split() {
        let spec = TowerSpec::new(
            2,
            vec![
                Move::node(&[], &[1, 1]),
                Move::Product,
                Move::node(&[1, -1], &[0, 2]),
            ],
        );
        let model = build_model(&spec).unwrap();
        assert_eq!(model.levels().len(), 4);
        for level in model.levels() {
            assert!(level.fan.validate().is_valid(), "level {}", level.index);
        }
        let report = torus_splitting_check(&model);
        assert!(report.is_clean(), "{:?}", report.violations);
        assert!(report.checked > 0);
    }

    #[test]
    fn splitting_check_catches_a_p1_fibre() {
        let spec = TowerSpec::new(1, vec![Move::Product]);
        let mut model = build_model(&spec).unwrap();
        let fan = Fan::new(
            2,
            vec![cone(2, &[&[1, 0], &[0, 1]]), cone(2, &[&[1, 0], &[0, -1]])],
        )
        .unwrap();
        let mut levels = model.levels().to_vec();
        levels[1].boundary = boundary_divisor(&fan);
        levels[1].fan = fan;
        model = TowerModel::from_levels(spec, levels);
        let report = torus_splitting_check(&model);
        assert_eq!(report.violations.len(), 1);
        assert!(report.violations[0].detail.contains("fibre over the torus"));
    }

    #[test]
    fn single_level_passes_vacuously() {
        let model = build_model(&TowerSpec::new(3, vec![])).unwrap();
        let report = torus_splitting_check(&model);
        assert!(report.is_clean());
        assert_eq!(report.checked, 0);
    }

    #[test]
    fn resource_caps() {
        let spec = TowerSpec::new(8, vec![Move::Product; 3]);
        assert!(matches!(build_model(&spec), Err(Error::Resource { .. })));
        let limits = Limits {
            max_dim: 10,
            max_rays: 2,
        };
        let spec = TowerSpec::new(1, vec![Move::Product, Move::Product]);
        assert!(matches!(
            build_model_with_limits(&spec, &limits),
            Err(Error::Resource {
                what: "ray count",
                ..
            })
        ));
    }

    #[test]
    fn invalid_specs_are_rejected() {
        let spec = TowerSpec::new(1, vec![Move::node(&[1], &[1])]);
        assert!(matches!(build_model(&spec), Err(Error::InvalidTower(_))));
    }
}
