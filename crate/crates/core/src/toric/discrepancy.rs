use num_bigint::BigInt;
use num_rational::BigRational;

use super::{canonical_divisor, cartier_data, CartierData, ToricDivisor};
use crate::lattice::{Fan, LatticeVector};
use crate::{Error, Result};

/// A log discrepancy together with the primitive vector it was evaluated at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogDiscrepancy {
    pub value: BigRational,
    /// The primitive vector of the valuation.
    pub valuation: LatticeVector,
    /// The input was `normalization * valuation`.
    pub normalization: BigInt,
}

/// `a(E, X, B)` for the toric valuation `E` given by `e`.
///
/// Evaluates the support function of `K_X + B` at the primitive vector of `e`;
/// on a simplicial cone with `e = Σ α_i u_i` this is `Σ α_i (1 - b_i)`.
/// Non-primitive `e` is normalised first and the factor is reported.
pub fn log_discrepancy(
    fan: &Fan,
    boundary: &ToricDivisor,
    e: &LatticeVector,
) -> Result<LogDiscrepancy> {
    e.check_dim(fan.ambient_dim())?;
    let valuation = e.primitive()?;
    if !fan.support_contains(&valuation)? {
        return Err(Error::NoCentre { vector: valuation });
    }
    let data = cartier_data(fan, &(&canonical_divisor(fan) + boundary))?;
    log_discrepancy_with_data(&data, e)
}

/// Same as [`log_discrepancy`] with precomputed Cartier data of `K_X + B`.
pub fn log_discrepancy_with_data(
    k_plus_b: &CartierData,
    e: &LatticeVector,
) -> Result<LogDiscrepancy> {
    let normalization = e.content();
    let valuation = e.primitive()?;
    let value = k_plus_b
        .support_function(&valuation)?
        .ok_or_else(|| Error::NoCentre {
            vector: valuation.clone(),
        })?;
    Ok(LogDiscrepancy {
        value,
        valuation,
        normalization,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::rational::{q, q_frac};
    use crate::lattice::Cone;
    use crate::toric::boundary_divisor;

    fn v(x: &[i64]) -> LatticeVector {
        LatticeVector::from_i64s(x)
    }

    #[test]
    fn blowup_of_the_origin() {
        let a2 = Fan::affine_space(2);
        let a = log_discrepancy(&a2, &ToricDivisor::zero(), &v(&[1, 1])).unwrap();
        assert_eq!(a.value, q(2));
        assert_eq!(a.normalization, BigInt::from(1));
    }

    #[test]
    fn rays_give_one_minus_coefficient() {
        let a2 = Fan::affine_space(2);
        let b = ToricDivisor::prime(&a2, &v(&[1, 0]))
            .unwrap()
            .scale(&q_frac(1, 3));
        assert_eq!(
            log_discrepancy(&a2, &b, &v(&[1, 0])).unwrap().value,
            q_frac(2, 3)
        );
        assert_eq!(log_discrepancy(&a2, &b, &v(&[0, 1])).unwrap().value, q(1));
    }

    #[test]
    fn lc_centre_on_the_a1_cone() {
        let f = Fan::new(2, vec![Cone::from_i64s(2, &[&[1, 0], &[1, 2]]).unwrap()]).unwrap();
        // (1,1) = 1/2 (1,0) + 1/2 (1,2)
        let a = log_discrepancy(&f, &boundary_divisor(&f), &v(&[1, 1])).unwrap();
        assert_eq!(a.value, q(0));
        let a = log_discrepancy(&f, &ToricDivisor::zero(), &v(&[1, 1])).unwrap();
        assert_eq!(a.value, q(1));
    }

    #[test]
    fn normalization_and_errors() {
        let a2 = Fan::affine_space(2);
        let a = log_discrepancy(&a2, &ToricDivisor::zero(), &v(&[2, 2])).unwrap();
        assert_eq!((a.value, a.normalization), (q(2), BigInt::from(2)));
        assert_eq!(a.valuation, v(&[1, 1]));
        assert!(matches!(
            log_discrepancy(&a2, &ToricDivisor::zero(), &v(&[-1, 1])),
            Err(Error::NoCentre { .. })
        ));
        assert_eq!(
            log_discrepancy(&a2, &ToricDivisor::zero(), &v(&[0, 0])).unwrap_err(),
            Error::ZeroVector
        );
    }

    #[test]
    fn not_q_cartier_is_reported() {
        let f = Fan::new(
            3,
            vec![Cone::from_i64s(3, &[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]]).unwrap()],
        )
        .unwrap();
        let b = ToricDivisor::prime(&f, &v(&[1, 0, 1])).unwrap();
        assert!(matches!(
            log_discrepancy(&f, &b, &v(&[0, 0, 1])),
            Err(Error::NotQCartier { .. })
        ));
    }
}
