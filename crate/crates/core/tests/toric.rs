use num_traits::One;
use proptest::prelude::*;
use toric_towers::lattice::rational::{self, q, q_frac, Q};
use toric_towers::toric::{
    boundary_divisor, canonical_divisor, cartier_data, character_divisor, log_discrepancy,
    pullback_divisor, Character, ToricDivisor,
};
use toric_towers::{BigInt, BigRational, Cone, Fan, IntMatrix, LatticeVector};

/// Linearly independent generators of a simplicial cone in dimension `dim`.
fn simplicial(dim: usize) -> impl Strategy<Value = Vec<LatticeVector>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, dim), dim)
        .prop_map(|rows| {
            rows.iter()
                .map(|r| LatticeVector::from_i64s(r))
                .collect::<Vec<_>>()
        })
        .prop_filter("independent", move |vs| {
            rational::rank_of_vectors(vs, dim) == dim
        })
        .prop_map(|vs| vs.iter().map(|v| v.primitive().unwrap()).collect())
}

fn coefficient() -> impl Strategy<Value = Q> {
    prop_oneof![Just(q(0)), Just(q_frac(1, 2)), Just(q(1))]
}

fn instance() -> impl Strategy<Value = (usize, Vec<LatticeVector>, Vec<Q>, Vec<u32>)> {
    (2usize..=3).prop_flat_map(|d| {
        (
            Just(d),
            simplicial(d),
            prop::collection::vec(coefficient(), d),
            prop::collection::vec(0u32..=6, d),
        )
    })
}

fn fan_of(dim: usize, rays: &[LatticeVector]) -> Fan {
    Fan::new(dim, vec![Cone::new(dim, rays.to_vec()).unwrap()]).unwrap()
}

fn combination(rays: &[LatticeVector], coeffs: &[u32]) -> LatticeVector {
    rays.iter()
        .zip(coeffs)
        .fold(LatticeVector::zero(rays[0].dim()), |acc, (r, &c)| {
            &acc + &r.scale(&BigInt::from(c))
        })
}

fn boundary(fan: &Fan, rays: &[LatticeVector], b: &[Q]) -> ToricDivisor {
    ToricDivisor::from_pairs(fan, rays.iter().cloned().zip(b.iter().cloned())).unwrap()
}

proptest! {
    #[test]
    fn invariant_under_star_subdivision(
        (dim, rays, b, coeffs) in instance(),
        w_coeffs in prop::collection::vec(1u32..=4, 3),
    ) {
        let fan = fan_of(dim, &rays);
        let bd = boundary(&fan, &rays, &b);
        let e = combination(&rays, &coeffs);
        prop_assume!(!e.is_zero());
        let w = combination(&rays, &w_coeffs[..dim]).primitive().unwrap();
        let sub = fan.star_subdivide(&w).unwrap();
        // crepant pullback: the new divisor gets coefficient 1 - a(w)
        let a_w = log_discrepancy(&fan, &bd, &w).unwrap().value;
        let mut pulled = bd.coefficients().clone();
        if !rays.contains(&w) {
            pulled.insert(w.clone(), Q::one() - a_w);
        }
        let bd_sub = ToricDivisor::new(&sub, pulled).unwrap();
        prop_assert_eq!(
            log_discrepancy(&fan, &bd, &e).unwrap().value,
            log_discrepancy(&sub, &bd_sub, &e).unwrap().value
        );
    }

    #[test]
    fn pullback_composes_along_subdivisions(
        (dim, rays, b, _c) in instance(),
        w1 in prop::collection::vec(1u32..=3, 3),
        w2 in prop::collection::vec(0u32..=3, 3),
    ) {
        let fan = fan_of(dim, &rays);
        let d = boundary(&fan, &rays, &b);
        let v1 = combination(&rays, &w1[..dim]).primitive().unwrap();
        let x1 = fan.star_subdivide(&v1).unwrap();
        let v2 = combination(&rays, &w2[..dim]);
        prop_assume!(!v2.is_zero());
        let x2 = x1.star_subdivide(&v2.primitive().unwrap()).unwrap();
        let id = IntMatrix::identity(dim);
        let once = pullback_divisor(&id, &x1, &fan, &d).unwrap();
        let twice = pullback_divisor(&id, &x2, &x1, &once).unwrap();
        let direct = pullback_divisor(&id, &x2, &fan, &d).unwrap();
        prop_assert_eq!(twice, direct);
    }

    #[test]
    fn character_divisors_are_a_homomorphism(
        a in prop::collection::vec(-4i64..=4, 3),
        b in prop::collection::vec(-4i64..=4, 3),
    ) {
        let fan = Fan::projective_space(3);
        let (ca, cb) = (Character::from_i64s(&a), Character::from_i64s(&b));
        let da = character_divisor(&fan, &ca).unwrap();
        let db = character_divisor(&fan, &cb).unwrap();
        prop_assert_eq!(character_divisor(&fan, &ca.mul(&cb)).unwrap(), &da + &db);
        prop_assert_eq!(character_divisor(&fan, &ca.inverse()).unwrap(), -&da);
        let data = cartier_data(&fan, &da).unwrap();
        prop_assert!(data.is_cartier());
        for (_, m) in data.pieces() {
            let expected: Vec<Q> = a.iter().map(|&x| q(x)).collect();
            prop_assert_eq!(m, &expected);
        }
    }

    #[test]
    fn cartier_index_clears_denominators((dim, rays, b, _c) in instance()) {
        let fan = fan_of(dim, &rays);
        let d = boundary(&fan, &rays, &b);
        let data = cartier_data(&fan, &d).unwrap();
        let scaled = cartier_data(&fan, &d.scale(&BigRational::from_integer(data.index().clone()))).unwrap();
        prop_assert!(scaled.is_cartier());
        let (_, m) = &data.pieces()[0];
        for (u, c) in rays.iter().zip(&b) {
            prop_assert_eq!(&u.dot_rational(m), c);
        }
    }
}

#[test]
fn blowup_chart_of_the_plane() {
    // blowing up the origin of A^2 adds the ray (1,1); K_Y = f^*K_X + E
    let a2 = Fan::affine_space(2);
    let e = LatticeVector::from_i64s(&[1, 1]);
    let a = log_discrepancy(&a2, &ToricDivisor::zero(), &e).unwrap();
    assert_eq!(a.value, q(2));
    let blown_up = a2.star_subdivide(&e).unwrap();
    let k = canonical_divisor(&blown_up);
    assert_eq!(k.coefficient(&e), q(-1));
    assert_eq!(
        log_discrepancy(&a2, &boundary_divisor(&a2), &e)
            .unwrap()
            .value,
        q(0)
    );
}

#[test]
fn non_cartier_on_a1_singularity() {
    let fan = fan_of(
        2,
        &[
            LatticeVector::from_i64s(&[1, 0]),
            LatticeVector::from_i64s(&[1, 2]),
        ],
    );
    let d = ToricDivisor::prime(&fan, &LatticeVector::from_i64s(&[1, 0])).unwrap();
    let data = cartier_data(&fan, &d).unwrap();
    assert_eq!(data.index(), &BigInt::from(2));
}
