use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::lattice::{Cone, Fan, LatticeVector};
use crate::{Error, Result};

/// A character `t^m` of the torus, identified with its exponent vector in `M`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Character {
    exponents: LatticeVector,
}

impl Character {
    pub fn new(exponents: LatticeVector) -> Self {
        Character { exponents }
    }

    pub fn from_i64s(exponents: &[i64]) -> Self {
        Character::new(LatticeVector::from_i64s(exponents))
    }

    /// The constant function 1.
    pub fn trivial(dim: usize) -> Self {
        Character::new(LatticeVector::zero(dim))
    }

    pub fn exponents(&self) -> &LatticeVector {
        &self.exponents
    }

    pub fn dim(&self) -> usize {
        self.exponents.dim()
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.is_zero()
    }

    /// Product of characters.
    pub fn mul(&self, other: &Character) -> Character {
        Character::new(&self.exponents + &other.exponents)
    }

    pub fn inverse(&self) -> Character {
        Character::new(-&self.exponents)
    }

    /// Order of vanishing along the divisor of the ray `u`.
    pub fn order_along(&self, u: &LatticeVector) -> BigInt {
        self.exponents.dot(u)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t^{}", self.exponents)
    }
}

/// A torus-invariant divisor `Σ d_i D_i` with rational coefficients, keyed by
/// the primitive ray `u_i` of `D_i`. Zero coefficients are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ToricDivisor {
    coefficients: BTreeMap<LatticeVector, BigRational>,
}

impl ToricDivisor {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Checks every keyed ray against the fan.
    pub fn new(fan: &Fan, coefficients: BTreeMap<LatticeVector, BigRational>) -> Result<Self> {
        for ray in coefficients.keys() {
            if !fan.has_ray(ray) {
                return Err(Error::UnknownRay { ray: ray.clone() });
            }
        }
        Ok(Self::from_map(coefficients))
    }

    pub fn from_pairs<I>(fan: &Fan, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (LatticeVector, BigRational)>,
    {
        let mut map = BTreeMap::new();
        for (ray, c) in pairs {
            *map.entry(ray).or_insert_with(BigRational::zero) += c;
        }
        Self::new(fan, map)
    }

    pub(crate) fn from_map(coefficients: BTreeMap<LatticeVector, BigRational>) -> Self {
        ToricDivisor {
            coefficients: coefficients
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// A single prime divisor `D_u` with coefficient 1.
    pub fn prime(fan: &Fan, ray: &LatticeVector) -> Result<Self> {
        Self::from_pairs(fan, [(ray.clone(), BigRational::one())])
    }

    pub fn coefficient(&self, ray: &LatticeVector) -> BigRational {
        self.coefficients
            .get(ray)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Non-zero coefficients in ray order.
    pub fn coefficients(&self) -> &BTreeMap<LatticeVector, BigRational> {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn scale(&self, k: &BigRational) -> ToricDivisor {
        Self::from_map(
            self.coefficients
                .iter()
                .map(|(r, c)| (r.clone(), c * k))
                .collect(),
        )
    }

    /// Coefficients `d_i` in the order of the cone's rays.
    pub fn restrict_to(&self, cone: &Cone) -> Vec<BigRational> {
        cone.generators()
            .iter()
            .map(|u| self.coefficient(u))
            .collect()
    }
}

impl Add for &ToricDivisor {
    type Output = ToricDivisor;
    fn add(self, rhs: &ToricDivisor) -> ToricDivisor {
        let mut map = self.coefficients.clone();
        for (r, c) in &rhs.coefficients {
            *map.entry(r.clone()).or_insert_with(BigRational::zero) += c;
        }
        ToricDivisor::from_map(map)
    }
}

impl Neg for &ToricDivisor {
    type Output = ToricDivisor;
    fn neg(self) -> ToricDivisor {
        self.scale(&-BigRational::one())
    }
}

impl Sub for &ToricDivisor {
    type Output = ToricDivisor;
    fn sub(self, rhs: &ToricDivisor) -> ToricDivisor {
        self + &(-rhs)
    }
}

impl fmt::Display for ToricDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            return write!(f, "0");
        }
        for (i, (r, c)) in self.coefficients.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*D{r}")?;
        }
        Ok(())
    }
}

fn constant_on_rays(fan: &Fan, value: BigRational) -> ToricDivisor {
    ToricDivisor::from_map(
        fan.rays()
            .iter()
            .map(|r| (r.clone(), value.clone()))
            .collect(),
    )
}

/// The toric boundary: coefficient 1 on every ray.
pub fn boundary_divisor(fan: &Fan) -> ToricDivisor {
    constant_on_rays(fan, BigRational::one())
}

/// The canonical divisor `K = -Σ D_i`.
pub fn canonical_divisor(fan: &Fan) -> ToricDivisor {
    constant_on_rays(fan, -BigRational::one())
}

/// `Div(χ^m) = Σ <m, u_i> D_i`.
pub fn character_divisor(fan: &Fan, character: &Character) -> Result<ToricDivisor> {
    character.exponents.check_dim(fan.ambient_dim())?;
    Ok(ToricDivisor::from_map(
        fan.rays()
            .iter()
            .map(|u| {
                (
                    u.clone(),
                    BigRational::from_integer(character.order_along(u)),
                )
            })
            .collect(),
    ))
}

/// The subfan of cones on which the character is regular, i.e. cones all of
/// whose rays satisfy `<m, u> >= 0`.
pub fn regularity_subfan(fan: &Fan, character: &Character) -> Result<Fan> {
    character.exponents.check_dim(fan.ambient_dim())?;
    let mut cones = Vec::new();
    for sigma in fan.maximal_cones() {
        if sigma.is_nonnegative_on(&character.exponents) {
            cones.push(sigma.clone());
            continue;
        }
        cones.extend(
            sigma
                .faces()
                .into_iter()
                .filter(|f| f.is_nonnegative_on(&character.exponents)),
        );
    }
    Fan::new(fan.ambient_dim(), cones)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::rational::q;

    fn v(x: &[i64]) -> LatticeVector {
        LatticeVector::from_i64s(x)
    }

    #[test]
    fn boundary_and_canonical() {
        let a2 = Fan::affine_space(2);
        let b = boundary_divisor(&a2);
        assert_eq!(b.coefficient(&v(&[1, 0])), q(1));
        assert_eq!(b.coefficient(&v(&[0, 1])), q(1));
        assert_eq!(canonical_divisor(&a2).coefficient(&v(&[0, 1])), q(-1));

        let p1 = Fan::projective_space(1);
        assert_eq!(boundary_divisor(&p1).coefficients().len(), 2);

        let torus = Fan::torus(2);
        assert!(boundary_divisor(&torus).is_zero());
        assert!(canonical_divisor(&torus).is_zero());

        for f in [a2, p1, torus, Fan::projective_space(3)] {
            assert!((&boundary_divisor(&f) + &canonical_divisor(&f)).is_zero());
        }
    }

    #[test]
    fn character_divisors() {
        let a2 = Fan::affine_space(2);
        let d = character_divisor(&a2, &Character::from_i64s(&[1, 0])).unwrap();
        assert_eq!(d, ToricDivisor::prime(&a2, &v(&[1, 0])).unwrap());
        let d = character_divisor(&a2, &Character::from_i64s(&[1, -1])).unwrap();
        assert_eq!(d.coefficient(&v(&[1, 0])), q(1));
        assert_eq!(d.coefficient(&v(&[0, 1])), q(-1));
        assert!(character_divisor(&a2, &Character::trivial(2))
            .unwrap()
            .is_zero());
        assert!(character_divisor(&a2, &Character::trivial(3)).is_err());
    }

    #[test]
    fn regularity_subfans() {
        let a2 = Fan::affine_space(2);
        assert_eq!(
            regularity_subfan(&a2, &Character::from_i64s(&[1, 0])).unwrap(),
            a2
        );
        assert_eq!(regularity_subfan(&a2, &Character::trivial(2)).unwrap(), a2);
        let sub = regularity_subfan(&a2, &Character::from_i64s(&[1, -1])).unwrap();
        assert_eq!(
            sub.maximal_cones(),
            &[Cone::from_i64s(2, &[&[1, 0]]).unwrap()]
        );
        let sub = regularity_subfan(&a2, &Character::from_i64s(&[-1, -1])).unwrap();
        assert_eq!(sub, Fan::torus(2));
    }

    #[test]
    fn unknown_rays_are_rejected() {
        let a2 = Fan::affine_space(2);
        assert!(matches!(
            ToricDivisor::prime(&a2, &v(&[1, 1])),
            Err(Error::UnknownRay { .. })
        ));
    }
}
