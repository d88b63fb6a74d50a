//! Batch invariant suites. Cases are independent and run in parallel; their
//! reports are merged in case order, so output depends only on the seed.

use num_traits::{One, Signed, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use toric_towers::lattice::rational::{self, Q};
use toric_towers::lattice::{dual_cone, dual_cone_with_limits, hnf, snf};
use toric_towers::polytope::{
    divisor_polytope, normalized_volume, relative_degree_on_p, relative_volume_on_p,
    ProjectiveDivisorData,
};
use toric_towers::report::{CheckReport, CheckViolation};
use toric_towers::toric::{
    canonical_divisor, cartier_data, log_discrepancy, regularity_subfan, ToricDivisor,
};
use toric_towers::tower::{
    base_change_to_curve, build_model_with_limits, lc_place_transfer_check_with_limits,
    local_model_at, node_lift, semigroup_cone, torus_splitting_check, validate_tower,
    CurveGermData, Move, TowerModel, TowerSpec,
};
use toric_towers::{BigInt, Cone, Fan, IntMatrix, LatticeVector, Limits};

use crate::document::{emit_tower, parse_tower};
use crate::oracles;
use crate::random::{case_rng, random_tower_with};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Kernel,
    Toric,
    Tower,
    Lc,
    Basechange,
    Volume,
    All,
}

#[derive(Clone, Debug)]
pub struct VerifyParams {
    /// Random cases per randomized check; `None` uses each check's default.
    pub cases: Option<usize>,
    /// Sampled vectors per tower in the lc check.
    pub samples: usize,
    pub limits: Limits,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams {
            cases: None,
            samples: 50,
            limits: Limits::default(),
        }
    }
}

/// A check report plus the number of cases abandoned at a resource cap.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub report: CheckReport,
    pub resource_exhausted: usize,
}

impl Outcome {
    fn merge(&mut self, other: Outcome) {
        self.report.merge(other.report);
        self.resource_exhausted += other.resource_exhausted;
    }

    fn from_error(check: &str, err: toric_towers::Error) -> Outcome {
        let mut out = Outcome::default();
        if err.is_resource() {
            out.resource_exhausted = 1;
            out.report.skip(None, format!("{check}: {err}"));
        } else {
            out.report.fail(CheckViolation::new(check, err.to_string()));
        }
        out
    }

    pub fn is_clean(&self) -> bool {
        self.report.is_clean()
    }
}

impl From<CheckReport> for Outcome {
    fn from(report: CheckReport) -> Self {
        Outcome {
            report,
            resource_exhausted: 0,
        }
    }
}

// stream tags for case_rng
const TAG_CONE: u32 = 1;
const TAG_CONTAINS: u32 = 2;
const TAG_SNF: u32 = 3;
const TAG_SIMPLICIAL: u32 = 4;
const TAG_TOWER: u32 = 5;
const TAG_LC_SEED: u32 = 6;
const TAG_GERM: u32 = 7;
const TAG_ROUND_TRIP: u32 = 8;

fn run_cases<F>(count: usize, case: F) -> Outcome
where
    F: Fn(u64) -> Outcome + Sync + Send,
{
    let results: Vec<Outcome> = (0..count as u64).into_par_iter().map(&case).collect();
    let mut out = Outcome::default();
    for r in results {
        out.merge(r);
    }
    out
}

pub fn run_verify(suite: Suite, params: &VerifyParams, seed: u64) -> Outcome {
    let n = |default: usize| params.cases.unwrap_or(default);
    let mut out = Outcome::default();
    let wanted = |s: Suite| suite == s || suite == Suite::All;
    if wanted(Suite::Kernel) {
        out.merge(hnf_small_matrices());
        out.merge(dual_involution(n(200), seed));
        out.merge(contains_agreement(n(200), seed));
        out.merge(snf_invariant_factors(n(100), seed));
    }
    if wanted(Suite::Toric) {
        out.merge(simplicial_log_discrepancy(n(20), seed));
        out.merge(blowup_chart());
    }
    if wanted(Suite::Tower) {
        out.merge(tower_soundness(n(200), seed, &params.limits));
        out.merge(local_models());
        out.merge(round_trip(n(100), seed));
    }
    if wanted(Suite::Lc) {
        out.merge(lc_transfer(n(200), params.samples, seed, &params.limits));
    }
    if wanted(Suite::Basechange) {
        out.merge(base_change(n(100), seed));
    }
    if wanted(Suite::Volume) {
        out.merge(volumes());
    }
    out
}

/// Hermite form of every 2 x 2 matrix with entries in `[-3, 3]` against the
/// elementary-operation oracle.
pub fn hnf_small_matrices() -> Outcome {
    let entries: Vec<i64> = (-3..=3).collect();
    let mut report = CheckReport::default();
    for a in &entries {
        for b in &entries {
            for c in &entries {
                for d in &entries {
                    let m = IntMatrix::from_i64s(2, 2, &[*a, *b, *c, *d]).expect("2 x 2");
                    let (h, u) = hnf(&m);
                    let expected = oracles::elementary_hnf(&m);
                    let ok =
                        h == expected && u.is_unimodular() && u.mul(&m).ok() == Some(h.clone());
                    report.record(ok, || {
                        CheckViolation::new(
                            "hnf-oracle",
                            format!("hnf({m}) = {h}, oracle {expected}"),
                        )
                    });
                }
            }
        }
    }
    report.into()
}

/// Generators that are positive on `(1, 2, ..., dim)`, so the cone is pointed.
fn random_pointed_cone<R: Rng>(rng: &mut R, dim: usize) -> Cone {
    let count = rng.random_range(1..=dim + 2);
    let mut gens = Vec::with_capacity(count);
    while gens.len() < count {
        let v: Vec<i64> = (0..dim).map(|_| rng.random_range(-3..=3)).collect();
        let weight: i64 = v.iter().enumerate().map(|(i, x)| (i as i64 + 1) * x).sum();
        if weight > 0 {
            gens.push(LatticeVector::from_i64s(&v));
        }
    }
    Cone::new(dim, gens).expect("dimensions agree")
}

/// `(C^∨)^∨ = C` for seeded random strongly convex cones in dimension <= 4.
pub fn dual_involution(count: usize, seed: u64) -> Outcome {
    run_cases(count, |i| {
        let mut rng = case_rng(seed, TAG_CONE, i);
        let dim = rng.random_range(1..=4);
        let c = random_pointed_cone(&mut rng, dim);
        let result = dual_cone(&c).and_then(|d| dual_cone(&d));
        match result {
            Ok(dd) => {
                let mut report = CheckReport::default();
                report.record(dd.rays() == c.canonical().rays(), || {
                    CheckViolation::new("dual-involution", format!("{c} -> {dd}"))
                });
                report.into()
            }
            Err(e) => Outcome::from_error("dual-involution", e),
        }
    })
}

/// `cone_contains` against Fourier-Motzkin on random instances in dim <= 3.
pub fn contains_agreement(count: usize, seed: u64) -> Outcome {
    run_cases(count, |i| {
        let mut rng = case_rng(seed, TAG_CONTAINS, i);
        let dim = rng.random_range(1..=3);
        let c = random_pointed_cone(&mut rng, dim);
        let v: Vec<i64> = (0..dim).map(|_| rng.random_range(-4..=4)).collect();
        let v = LatticeVector::from_i64s(&v);
        let mut report = CheckReport::default();
        match c.contains(&v) {
            Ok(inside) => {
                let expected = oracles::fourier_motzkin_contains(c.generators(), &v);
                report.record(inside == expected, || {
                    CheckViolation::new(
                        "contains-oracle",
                        format!("{v} in {c}: {inside}, oracle {expected}"),
                    )
                    .with_witness(v.clone())
                });
            }
            Err(e) => return Outcome::from_error("contains-oracle", e),
        }
        report.into()
    })
}

/// Smith form diagonals against determinantal divisors on random 3 x 3.
pub fn snf_invariant_factors(count: usize, seed: u64) -> Outcome {
    run_cases(count, |i| {
        let mut rng = case_rng(seed, TAG_SNF, i);
        let data: Vec<i64> = (0..9).map(|_| rng.random_range(-5..=5)).collect();
        let m = IntMatrix::from_i64s(3, 3, &data).expect("3 x 3");
        let (s, u, v) = snf(&m);
        let mut prefix = BigInt::one();
        let mut products = Vec::new();
        for k in 0..3 {
            prefix *= s.get(k, k);
            products.push(prefix.clone());
        }
        let ok = products == oracles::determinantal_divisors(&m)
            && u.is_unimodular()
            && v.is_unimodular()
            && u.mul(&m).and_then(|x| x.mul(&v)).ok() == Some(s.clone());
        let mut report = CheckReport::default();
        report.record(ok, || {
            CheckViolation::new("snf-oracle", format!("snf({m}) = {s}"))
        });
        report.into()
    })
}

/// Seeded random simplicial cone in dimension 2 or 3 with boundary
/// coefficients in `{0, 1/2, 1}` and a primitive vector inside it.
pub fn simplicial_instance(seed: u64, i: u64) -> (Fan, Vec<LatticeVector>, Vec<Q>, LatticeVector) {
    let mut rng = case_rng(seed, TAG_SIMPLICIAL, i);
    let dim = rng.random_range(2..=3);
    let rays = loop {
        let rays: Vec<LatticeVector> = (0..dim)
            .map(|_| {
                let v: Vec<i64> = (0..dim).map(|_| rng.random_range(-3..=3)).collect();
                LatticeVector::from_i64s(&v)
            })
            .collect();
        if rational::rank_of_vectors(&rays, dim) == dim {
            break rays
                .iter()
                .map(|r| r.primitive().expect("independent vectors are non-zero"))
                .collect::<Vec<_>>();
        }
    };
    let half = Q::new(BigInt::one(), BigInt::from(2));
    let b: Vec<Q> = (0..dim)
        .map(|_| match rng.random_range(0..3) {
            0 => Q::zero(),
            1 => half.clone(),
            _ => Q::one(),
        })
        .collect();
    let e = loop {
        let e = rays.iter().fold(LatticeVector::zero(dim), |acc, r| {
            &acc + &r.scale(&BigInt::from(rng.random_range(0..=5)))
        });
        if let Ok(p) = e.primitive() {
            break p;
        }
    };
    let fan = Fan::new(
        dim,
        vec![Cone::new(dim, rays.clone()).expect("dimensions agree")],
    )
    .expect("a single pointed cone is a fan");
    (fan, rays, b, e)
}

/// Log discrepancy on random simplicial cones against Cramer's rule, and its
/// invariance under star subdivision.
pub fn simplicial_log_discrepancy(count: usize, seed: u64) -> Outcome {
    run_cases(count, |i| {
        let (fan, rays, b, e) = simplicial_instance(seed, i);
        let mut report = CheckReport::default();
        let boundary = ToricDivisor::from_pairs(&fan, rays.iter().cloned().zip(b.iter().cloned()));
        let run = || -> toric_towers::Result<()> {
            let boundary = boundary?;
            let a = log_discrepancy(&fan, &boundary, &e)?.value;
            let expected = oracles::cramer_log_discrepancy(&rays, &b, &e);
            report.record(expected.as_ref() == Some(&a), || {
                CheckViolation::new(
                    "simplicial-formula",
                    format!("a = {a}, oracle {expected:?}"),
                )
                .with_witness(e.clone())
            });
            // subdivide at the sum of the rays and pull the boundary back
            let w = rays
                .iter()
                .fold(LatticeVector::zero(fan.ambient_dim()), |acc, r| &acc + r)
                .primitive()?;
            let a_w = log_discrepancy(&fan, &boundary, &w)?.value;
            let sub = fan.star_subdivide(&w)?;
            let mut pulled = boundary.coefficients().clone();
            pulled.insert(w.clone(), Q::one() - a_w);
            let a_sub = log_discrepancy(&sub, &ToricDivisor::new(&sub, pulled)?, &e)?.value;
            report.record(a_sub == a, || {
                CheckViolation::new("star-subdivision", format!("a = {a} before, {a_sub} after"))
                    .with_witness(e.clone())
            });
            Ok(())
        };
        match run() {
            Ok(()) => report.into(),
            Err(err) => Outcome::from_error("simplicial-formula", err),
        }
    })
}

/// `a(E, A^2, 0) = 2` for the exceptional divisor of the blowup of the origin.
pub fn blowup_chart() -> Outcome {
    let mut report = CheckReport::default();
    let chart = IntMatrix::from_i64s(2, 2, &[1, 0, 1, 1]).expect("2 x 2");
    let expected = Q::from_integer(oracles::chart_log_discrepancy(&chart, 0));
    let e = LatticeVector::from_i64s(&[1, 1]);
    match log_discrepancy(&Fan::affine_space(2), &ToricDivisor::zero(), &e) {
        Ok(a) => report.record(
            a.value == expected && expected == Q::from_integer(2.into()),
            || {
                CheckViolation::new(
                    "blowup-chart",
                    format!("a = {}, chart gives {expected}", a.value),
                )
                .with_witness(e.clone())
            },
        ),
        Err(err) => return Outcome::from_error("blowup-chart", err),
    }
    report.into()
}

/// The tower used as case `i`: `p <= 3`, `d <= 5`, exponents in `[-3, 3]`.
pub fn tower_case(seed: u64, i: u64) -> TowerSpec {
    let mut rng = case_rng(seed, TAG_TOWER, i);
    let p = rng.random_range(1..=3);
    let d = rng.random_range(1..=5);
    random_tower_with(p, d, 3, &mut rng)
}

/// Per-level soundness of a built model.
pub fn check_model(model: &TowerModel, limits: &Limits) -> toric_towers::Result<CheckReport> {
    let mut report = CheckReport::default();
    for level in model.levels() {
        let i = level.index;
        let validation = level.fan.validate();
        report.record(validation.is_valid(), || {
            let msgs: Vec<String> = validation
                .violations
                .iter()
                .map(|v| v.to_string())
                .collect();
            CheckViolation::new("fan-validate", msgs.join("; ")).at_level(i)
        });
        let k_plus_c = &canonical_divisor(&level.fan) + &level.boundary;
        let data = cartier_data(&level.fan, &k_plus_c)?;
        report.record(k_plus_c.is_zero() && data.index().is_one(), || {
            CheckViolation::new(
                "k-plus-c-cartier",
                format!("Cartier index {}", data.index()),
            )
            .at_level(i)
        });
        let Some(step) = &level.step else { continue };
        let n = level.fan.ambient_dim();
        let character = step.character();
        for r in level.fan.rays() {
            let height = &r.entries()[n - 1];
            let base = r.truncate(n - 1);
            let ok = match &character {
                Some(lambda) => !height.is_negative() && *height <= lambda.exponents().dot(&base),
                None => height.is_zero() || *r == LatticeVector::unit(n, n - 1),
            };
            report.record(ok, || {
                CheckViolation::new("new-ray-bounds", "ray outside the move's bounds")
                    .at_level(i)
                    .with_witness(r.clone())
            });
        }
        if let Some(lambda) = &character {
            let below = &model.level(i - 1)?.fan;
            let m = lambda.exponents();
            for sigma in regularity_subfan(below, lambda)?.maximal_cones() {
                let semigroup = semigroup_cone(sigma, m, limits)?;
                let chart = dual_cone_with_limits(&semigroup, limits)?;
                let lifted = node_lift(sigma, m);
                report.record(chart.rays() == lifted.canonical().rays() && level.fan.contains_cone(&chart), || {
                    CheckViolation::new("semigroup-dual", format!("dual of the semigroup cone over {sigma} is {chart}, fan cone {lifted}"))
                        .at_level(i)
                });
            }
        }
    }
    report.merge(torus_splitting_check(model));
    Ok(report)
}

pub fn tower_soundness(count: usize, seed: u64, limits: &Limits) -> Outcome {
    run_cases(count, |i| {
        let spec = tower_case(seed, i);
        match build_model_with_limits(&spec, limits).and_then(|m| check_model(&m, limits)) {
            Ok(r) => r.into(),
            Err(e) => Outcome::from_error("tower-soundness", e),
        }
    })
}

pub fn lc_transfer(count: usize, samples: usize, seed: u64, limits: &Limits) -> Outcome {
    run_cases(count, |i| {
        let spec = tower_case(seed, i);
        let lc_seed = case_rng(seed, TAG_LC_SEED, i).random::<u64>();
        match lc_place_transfer_check_with_limits(&spec, samples, lc_seed, limits) {
            Ok(r) => r.into(),
            Err(e) => Outcome::from_error("lc-place-transfer", e),
        }
    })
}

/// Node exponents after base change against `Σ c_j n_j`; the unit germ on a
/// curve base is the identity; germs off the boundary kill every t-exponent.
pub fn base_change(count: usize, seed: u64) -> Outcome {
    run_cases(count, |i| {
        let mut rng = case_rng(seed, TAG_GERM, i);
        let spec = tower_case(seed ^ 0x9e37_79b9, i);
        let on_boundary = rng.random_bool(0.75);
        let orders: Vec<u64> = (0..spec.base_dim)
            .map(|_| {
                if on_boundary {
                    rng.random_range(0..=4)
                } else {
                    0
                }
            })
            .collect();
        let mut report = CheckReport::default();
        let run = |report: &mut CheckReport| -> toric_towers::Result<()> {
            let germ = CurveGermData::from_u64s(&orders, on_boundary)?;
            let out = base_change_to_curve(&spec, &germ)?;
            let mut ok = out.base_dim == 1 && out.moves.len() == spec.moves.len();
            for (before, after) in spec.moves.iter().zip(&out.moves) {
                ok &= match (before, after) {
                    (Move::Product, Move::Product) => true,
                    (
                        Move::Node {
                            alpha_exponents: a,
                            t_exponents: t,
                        },
                        Move::Node {
                            alpha_exponents: a2,
                            t_exponents: t2,
                        },
                    ) => a == a2 && *t2 == vec![oracles::base_change_exponent(t, germ.orders())],
                    _ => false,
                };
            }
            ok &= validate_tower(&out).is_valid();
            report.record(ok, || {
                CheckViolation::new(
                    "base-change",
                    format!("orders {orders:?}, on_boundary {on_boundary}"),
                )
            });

            let curve = TowerSpec::new(
                1,
                tower_case(seed ^ 0x51ed_270b, i)
                    .moves
                    .iter()
                    .map(restrict_to_curve)
                    .collect(),
            );
            let identity = base_change_to_curve(&curve, &CurveGermData::from_u64s(&[1], true)?)?;
            report.record(identity == curve, || {
                CheckViolation::new("base-change-identity", "c = (1) changed the tower")
            });

            let off = base_change_to_curve(
                &spec,
                &CurveGermData::from_u64s(&vec![0; spec.base_dim], false)?,
            )?;
            let zero = off.moves.iter().all(|m| match m {
                Move::Node { t_exponents, .. } => t_exponents.iter().all(|t| t.is_zero()),
                Move::Product => true,
            });
            report.record(zero, || {
                CheckViolation::new("base-change-off-boundary", "non-zero t-exponent")
            });
            Ok(())
        };
        match run(&mut report) {
            Ok(()) => report.into(),
            Err(e) => Outcome::from_error("base-change", e),
        }
    })
}

/// Keeps the first t-exponent, turning a move into one over a curve base.
fn restrict_to_curve(m: &Move) -> Move {
    match m {
        Move::Product => Move::Product,
        Move::Node {
            alpha_exponents,
            t_exponents,
        } => Move::Node {
            alpha_exponents: alpha_exponents.clone(),
            t_exponents: t_exponents[..1].to_vec(),
        },
    }
}

/// The worked local models `α α' = t`, `α α' = t^2` and a product move:
/// `local_model_at` against the Jacobian oracle on every cone of level 2.
pub fn local_models() -> Outcome {
    let examples = [
        TowerSpec::new(1, vec![Move::node(&[], &[1])]),
        TowerSpec::new(1, vec![Move::node(&[], &[2])]),
        TowerSpec::new(1, vec![Move::Product]),
    ];
    let mut out = Outcome::default();
    for spec in examples {
        let mut report = CheckReport::default();
        let model = match build_model_with_limits(&spec, &Limits::default()) {
            Ok(m) => m,
            Err(e) => {
                out.merge(Outcome::from_error("local-model", e));
                continue;
            }
        };
        let level = model.level(2).expect("two levels");
        let step = level.step.clone().expect("level 2 has a move");
        for cone in level.fan.cones() {
            let expected = oracles::jacobian_local_model(&step, &cone);
            match local_model_at(&model, 2, &cone) {
                Ok(got) => report.record(got == expected, || {
                    CheckViolation::new("local-model", format!("{cone}: {got}, oracle {expected}"))
                        .at_level(2)
                }),
                Err(e) => {
                    report.fail(CheckViolation::new("local-model", e.to_string()).at_level(2))
                }
            }
        }
        out.merge(report.into());
    }
    out
}

/// Closed forms on projective-space fibres for `n <= 4` and `k, a, d <= 3`.
pub fn volumes() -> Outcome {
    let mut report = CheckReport::default();
    let q = |x: i64| Q::from_integer(x.into());
    for n in 1..=4usize {
        let fan = Fan::projective_space(n);
        let h = ToricDivisor::prime(&fan, &LatticeVector::new(vec![BigInt::from(-1); n]))
            .expect("ray of P^n");
        for k in 1..=3i64 {
            let expected = q(k.pow(n as u32));
            let data = ProjectiveDivisorData::hyperplane_multiple(n, k, 1).expect("valid");
            let vol = relative_volume_on_p(&data);
            report.record(vol == expected, || {
                CheckViolation::new("relative-volume", format!("n = {n}, k = {k}: {vol}"))
            });
            match divisor_polytope(&fan, &h.scale(&q(k))) {
                Ok(p) => {
                    let v = normalized_volume(&p);
                    report.record(v == expected, || {
                        CheckViolation::new("polytope-volume", format!("n = {n}, k = {k}: {v}"))
                    });
                }
                Err(e) => report.fail(CheckViolation::new("polytope-volume", e.to_string())),
            }
        }
        for a in 1..=3i64 {
            for d in 1..=3usize {
                let data = ProjectiveDivisorData::new(
                    n,
                    vec![Q::one(); d],
                    vec![Q::one()],
                    BigInt::from(a),
                )
                .expect("valid");
                let deg = relative_degree_on_p(&data);
                let expected = q(d as i64 * a.pow(n as u32 - 1));
                report.record(deg == expected, || {
                    CheckViolation::new(
                        "relative-degree",
                        format!("n = {n}, a = {a}, d = {d}: {deg}"),
                    )
                });
            }
        }
    }
    report.into()
}

/// `parse(emit(spec)) = spec` on random towers.
pub fn round_trip(count: usize, seed: u64) -> Outcome {
    run_cases(count, |i| {
        let mut rng = case_rng(seed, TAG_ROUND_TRIP, i);
        let p = rng.random_range(1..=4);
        let d = rng.random_range(1..=7);
        let spec = random_tower_with(p, d, 1000, &mut rng);
        let mut report = CheckReport::default();
        let text = emit_tower(&spec);
        let back = parse_tower(&text);
        report.record(back.as_ref().ok() == Some(&spec), || {
            CheckViolation::new("round-trip", format!("{back:?}"))
        });
        report.into()
    })
}
