use proptest::prelude::*;
use toric_towers::lattice::rational::{q, Q};
use toric_towers::polytope::{
    divisor_polytope, normalized_volume, relative_degree_on_p, relative_volume_on_p,
    LatticePolytope, ProjectiveDivisorData,
};
use toric_towers::toric::ToricDivisor;
use toric_towers::{BigInt, Fan, IntMatrix, LatticeVector};

fn hyperplane(n: usize) -> (Fan, ToricDivisor) {
    let fan = Fan::projective_space(n);
    let ray = LatticeVector::new(vec![BigInt::from(-1); n]);
    let h = ToricDivisor::prime(&fan, &ray).unwrap();
    (fan, h)
}

fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    // products of elementary matrices and sign flips
    prop::collection::vec((0..n, 0..n, -2i64..=2, any::<bool>()), 0..8).prop_map(move |ops| {
        let mut m = IntMatrix::identity(n);
        for (i, j, k, flip) in ops {
            let mut e = IntMatrix::identity(n);
            if i != j {
                e.set(i, j, BigInt::from(k));
            } else if flip {
                e.set(i, i, BigInt::from(-1));
            }
            m = e.mul(&m).unwrap();
        }
        m
    })
}

fn transform(m: &IntMatrix, p: &[Q]) -> Vec<Q> {
    (0..m.rows()).map(|r| m.row(r).dot_rational(p)).collect()
}

fn data(n: usize, horizontal: &[i64], vertical: &[i64], a: i64) -> ProjectiveDivisorData {
    ProjectiveDivisorData::new(
        n,
        horizontal.iter().map(|&x| q(x)).collect(),
        vertical.iter().map(|&x| q(x)).collect(),
        BigInt::from(a),
    )
    .unwrap()
}

#[test]
fn multiples_of_the_hyperplane() {
    for n in 1..=4 {
        let (fan, h) = hyperplane(n);
        for k in 1..=3 {
            let p = divisor_polytope(&fan, &h.scale(&q(k))).unwrap();
            assert_eq!(p.vertices().len(), n + 1);
            assert_eq!(
                normalized_volume(&p),
                q(k.pow(n as u32)),
                "n = {n}, k = {k}"
            );
        }
    }
}

#[test]
fn volume_agrees_with_the_fibre_formula() {
    for n in 1..=4 {
        let (fan, h) = hyperplane(n);
        for k in 0..=3i64 {
            let p = divisor_polytope(&fan, &h.scale(&q(k))).unwrap();
            let d = data(n, &[k], &[], 1);
            assert_eq!(normalized_volume(&p), relative_volume_on_p(&d));
        }
    }
}

proptest! {
    #[test]
    fn volume_is_unimodular_invariant(
        (n, points, m) in (1usize..=3).prop_flat_map(|n| (
            Just(n),
            prop::collection::vec(prop::collection::vec(-3i64..=3, n), 1..8),
            unimodular(n),
        ))
    ) {
        let pts: Vec<Vec<Q>> = points.iter().map(|p| p.iter().map(|&x| q(x)).collect()).collect();
        let moved: Vec<Vec<Q>> = pts.iter().map(|p| transform(&m, p)).collect();
        let a = normalized_volume(&LatticePolytope::from_points(n, pts).unwrap());
        let b = normalized_volume(&LatticePolytope::from_points(n, moved).unwrap());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn hull_vertices_are_irredundant(points in prop::collection::vec(prop::collection::vec(-3i64..=3, 2), 1..10)) {
        let pts: Vec<Vec<Q>> = points.iter().map(|p| p.iter().map(|&x| q(x)).collect()).collect();
        let hull = LatticePolytope::from_points(2, pts).unwrap();
        for skip in 0..hull.vertices().len() {
            let rest: Vec<Vec<Q>> = hull.vertices().iter().enumerate()
                .filter(|&(i, _)| i != skip).map(|(_, v)| v.clone()).collect();
            let smaller = LatticePolytope::from_points(2, rest).unwrap();
            prop_assert!(smaller.vertices().len() < hull.vertices().len());
        }
    }

    #[test]
    fn degree_is_additive_and_homogeneous(
        n in 1usize..=4,
        d1 in prop::collection::vec(-3i64..=3, 0..4),
        d2 in prop::collection::vec(-3i64..=3, 0..4),
        v in prop::collection::vec(-3i64..=3, 0..3),
        a in 1i64..=3,
    ) {
        let sum: Vec<i64> = d1.iter().chain(&d2).copied().collect();
        prop_assert_eq!(
            relative_degree_on_p(&data(n, &sum, &v, a)),
            relative_degree_on_p(&data(n, &d1, &[], a)) + relative_degree_on_p(&data(n, &d2, &v, a))
        );
        let scale = q(a).pow(n as i32 - 1);
        prop_assert_eq!(relative_degree_on_p(&data(n, &d1, &v, a)), relative_degree_on_p(&data(n, &d1, &[], 1)) * scale);
    }

    #[test]
    fn fibre_volume_is_monotone(n in 1usize..=4, coeffs in prop::collection::vec(0i64..=3, 1..4), i in 0usize..4) {
        let i = i % coeffs.len();
        let mut bumped = coeffs.clone();
        bumped[i] += 1;
        prop_assert!(relative_volume_on_p(&data(n, &bumped, &[], 1)) >= relative_volume_on_p(&data(n, &coeffs, &[], 1)));
    }
}
