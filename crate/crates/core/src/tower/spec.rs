use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::lattice::{LatticeVector, ValidationReport};
use crate::toric::Character;

/// One step of a special toric tower.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    /// `V_i = V_{i-1} x A^1`.
    Product,
    /// `V_i = {α α' = λ}` with `λ = α_2^{a_2} ... α_{i-1}^{a_{i-1}} t_1^{n_1} ... t_p^{n_p}`.
    Node {
        alpha_exponents: Vec<BigInt>,
        t_exponents: Vec<BigInt>,
    },
}

impl Move {
    pub fn node(alpha_exponents: &[i64], t_exponents: &[i64]) -> Move {
        Move::Node {
            alpha_exponents: alpha_exponents.iter().map(|&x| BigInt::from(x)).collect(),
            t_exponents: t_exponents.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn is_node(&self) -> bool {
        matches!(self, Move::Node { .. })
    }

    /// `λ` as a character on `N_{i-1}` (t-exponents first, then α-exponents).
    pub fn character(&self) -> Option<Character> {
        match self {
            Move::Product => None,
            Move::Node {
                alpha_exponents,
                t_exponents,
            } => {
                let mut e = t_exponents.clone();
                e.extend(alpha_exponents.iter().cloned());
                Some(Character::new(LatticeVector::new(e)))
            }
        }
    }
}

/// A symbolic special toric tower: base dimension `p` and the moves that
/// produce levels `2, ..., d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TowerSpec {
    pub base_dim: usize,
    pub moves: Vec<Move>,
}

impl TowerSpec {
    pub fn new(base_dim: usize, moves: Vec<Move>) -> Self {
        TowerSpec { base_dim, moves }
    }

    /// Number of levels `d`.
    pub fn levels(&self) -> usize {
        self.moves.len() + 1
    }

    /// Rank of the top lattice `N_d`.
    pub fn top_dim(&self) -> usize {
        self.base_dim + self.moves.len()
    }

    /// The move producing level `i` (for `2 <= i <= d`).
    pub fn move_for_level(&self, level: usize) -> Option<&Move> {
        level.checked_sub(2).and_then(|k| self.moves.get(k))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TowerViolation {
    ZeroBaseDim,
    /// The character of the move at `level` has an exponent for `α_variable`,
    /// which only exists from level `variable` on.
    UndefinedVariable {
        level: usize,
        variable: usize,
    },
    AlphaArity {
        level: usize,
        expected: usize,
        found: usize,
    },
    TArity {
        level: usize,
        expected: usize,
        found: usize,
    },
}

impl fmt::Display for TowerViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TowerViolation::ZeroBaseDim => write!(f, "base dimension must be positive"),
            TowerViolation::UndefinedVariable { level, variable } => write!(
                f,
                "move {}: level {level} character references α_{variable}, which is not yet defined",
                level - 2
            ),
            TowerViolation::AlphaArity {
                level,
                expected,
                found,
            } => write!(
                f,
                "move {}: level {level} needs {expected} alpha exponents, found {found}",
                level - 2
            ),
            TowerViolation::TArity {
                level,
                expected,
                found,
            } => write!(
                f,
                "move {}: level {level} needs {expected} t exponents, found {found}",
                level - 2
            ),
        }
    }
}

/// Checks exponent-vector lengths against the variables available at each
/// level. The trivial character is allowed.
pub fn validate_tower(spec: &TowerSpec) -> ValidationReport<TowerViolation> {
    let mut violations = Vec::new();
    if spec.base_dim == 0 {
        violations.push(TowerViolation::ZeroBaseDim);
    }
    for (k, mv) in spec.moves.iter().enumerate() {
        let level = k + 2;
        let Move::Node {
            alpha_exponents,
            t_exponents,
        } = mv
        else {
            continue;
        };
        // α_2, ..., α_{level-1} exist below this level
        let available = level - 2;
        if alpha_exponents.len() > available {
            let first_undefined = alpha_exponents[available..]
                .iter()
                .position(|x| !x.is_zero())
                .unwrap_or(0);
            violations.push(TowerViolation::UndefinedVariable {
                level,
                variable: available + first_undefined + 2,
            });
        } else if alpha_exponents.len() < available {
            violations.push(TowerViolation::AlphaArity {
                level,
                expected: available,
                found: alpha_exponents.len(),
            });
        }
        if t_exponents.len() != spec.base_dim {
            violations.push(TowerViolation::TArity {
                level,
                expected: spec.base_dim,
                found: t_exponents.len(),
            });
        }
    }
    ValidationReport::new(violations)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_product_is_valid() {
        assert!(validate_tower(&TowerSpec::new(1, vec![Move::Product])).is_valid());
    }

    #[test]
    fn alpha_two_is_undefined_at_level_two() {
        let spec = TowerSpec::new(1, vec![Move::node(&[1], &[1])]);
        let report = validate_tower(&spec);
        assert_eq!(
            report.violations,
            vec![TowerViolation::UndefinedVariable {
                level: 2,
                variable: 2
            }]
        );
        assert!(report.violations[0].to_string().contains("α_2"));
    }

    #[test]
    fn two_nodes_over_a_plane() {
        let spec = TowerSpec::new(
            2,
            vec![Move::node(&[], &[1, 1]), Move::node(&[1], &[-1, 0])],
        );
        assert!(validate_tower(&spec).is_valid());
        assert_eq!(spec.levels(), 3);
        assert_eq!(spec.top_dim(), 4);
        assert_eq!(
            spec.moves[1].character().unwrap(),
            Character::from_i64s(&[-1, 0, 1])
        );
    }

    #[test]
    fn arity_errors() {
        let spec = TowerSpec::new(2, vec![Move::Product, Move::node(&[], &[1])]);
        let report = validate_tower(&spec);
        assert_eq!(report.violations.len(), 2);
        assert!(report.violations[0].to_string().starts_with("move 1"));
        assert!(!validate_tower(&TowerSpec::new(0, vec![])).is_valid());
    }

    #[test]
    fn trivial_character_is_allowed() {
        let spec = TowerSpec::new(1, vec![Move::node(&[], &[0]), Move::node(&[0], &[0])]);
        assert!(validate_tower(&spec).is_valid());
    }
}
