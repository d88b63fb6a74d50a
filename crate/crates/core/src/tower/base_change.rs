use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::spec::{validate_tower, Move, TowerSpec};
use crate::{Error, Result};

/// A morphism from a curve germ `(Z_1, E_1)` to `(A^p, C_1)`, recorded by the
/// vanishing orders `c_j` of the pulled-back coordinates `t_j` at the point and
/// whether the point lies on `E_1`. Unit factors are not recorded: they only
/// rescale coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveGermData {
    orders: Vec<BigInt>,
    on_boundary: bool,
}

impl CurveGermData {
    pub fn new(orders: Vec<BigInt>, on_boundary: bool) -> Result<Self> {
        if let Some(c) = orders.iter().find(|c| c.is_negative()) {
            return Err(Error::InvalidGerm(format!(
                "vanishing order {c} is negative"
            )));
        }
        if !on_boundary && orders.iter().any(|c| !c.is_zero()) {
            return Err(Error::InvalidGerm(
                "a point off the boundary maps into the torus, so every order must be 0".into(),
            ));
        }
        Ok(CurveGermData {
            orders,
            on_boundary,
        })
    }

    pub fn from_u64s(orders: &[u64], on_boundary: bool) -> Result<Self> {
        Self::new(
            orders.iter().map(|&c| BigInt::from(c)).collect(),
            on_boundary,
        )
    }

    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    pub fn on_boundary(&self) -> bool {
        self.on_boundary
    }
}

/// The special toric tower over `A^1 = Spec k[t]` obtained by base change to a
/// curve germ: every node character `α^a t_1^{n_1} ... t_p^{n_p}` becomes
/// `β^a t^{Σ c_j n_j}`; product moves are unchanged.
pub fn base_change_to_curve(spec: &TowerSpec, germ: &CurveGermData) -> Result<TowerSpec> {
    let report = validate_tower(spec);
    if !report.is_valid() {
        let msgs: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
        return Err(Error::InvalidTower(msgs.join("; ")));
    }
    if germ.orders.len() != spec.base_dim {
        return Err(Error::InvalidGerm(format!(
            "{} vanishing orders for a base of dimension {}",
            germ.orders.len(),
            spec.base_dim
        )));
    }
    let moves = spec
        .moves
        .iter()
        .map(|mv| match mv {
            Move::Product => Move::Product,
            Move::Node {
                alpha_exponents,
                t_exponents,
            } => {
                let t: BigInt = germ
                    .orders
                    .iter()
                    .zip(t_exponents)
                    .map(|(c, n)| c * n)
                    .sum();
                Move::Node {
                    alpha_exponents: alpha_exponents.clone(),
                    t_exponents: vec![t],
                }
            }
        })
        .collect();
    Ok(TowerSpec::new(1, moves))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let spec = TowerSpec::new(2, vec![Move::node(&[], &[1, 1])]);
        let germ = CurveGermData::from_u64s(&[1, 1], true).unwrap();
        assert_eq!(
            base_change_to_curve(&spec, &germ).unwrap(),
            TowerSpec::new(1, vec![Move::node(&[], &[2])])
        );

        let spec = TowerSpec::new(2, vec![Move::node(&[], &[3, -1])]);
        let germ = CurveGermData::from_u64s(&[2, 0], true).unwrap();
        assert_eq!(
            base_change_to_curve(&spec, &germ).unwrap(),
            TowerSpec::new(1, vec![Move::node(&[], &[6])])
        );
    }

    #[test]
    fn off_boundary_kills_t() {
        let spec = TowerSpec::new(
            2,
            vec![
                Move::node(&[], &[1, 2]),
                Move::Product,
                Move::node(&[2, -1], &[-3, 1]),
            ],
        );
        let germ = CurveGermData::from_u64s(&[0, 0], false).unwrap();
        let out = base_change_to_curve(&spec, &germ).unwrap();
        assert_eq!(
            out,
            TowerSpec::new(
                1,
                vec![
                    Move::node(&[], &[0]),
                    Move::Product,
                    Move::node(&[2, -1], &[0])
                ]
            )
        );
    }

    #[test]
    fn germ_invariants() {
        assert!(CurveGermData::from_u64s(&[1], false).is_err());
        assert!(CurveGermData::new(vec![BigInt::from(-1)], true).is_err());
        let spec = TowerSpec::new(2, vec![Move::Product]);
        let germ = CurveGermData::from_u64s(&[1], true).unwrap();
        assert!(matches!(
            base_change_to_curve(&spec, &germ),
            Err(Error::InvalidGerm(_))
        ));
    }
}
