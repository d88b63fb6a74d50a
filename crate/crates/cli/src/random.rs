use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toric_towers::tower::{Move, TowerSpec};
use toric_towers::BigInt;

/// A reproducible stream for case `index` of a batch identified by `tag`.
pub fn case_rng(seed: u64, tag: u32, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((u64::from(tag) << 40) | index);
    rng
}

/// A random tower with `d` levels over `A^p`. Each move is a product or a node
/// with equal probability; node exponents are uniform in
/// `[-max_exponent, max_exponent]`.
pub fn random_tower(p: usize, d: usize, max_exponent: u64, seed: u64) -> TowerSpec {
    random_tower_with(p, d, max_exponent, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn random_tower_with<R: Rng>(p: usize, d: usize, max_exponent: u64, rng: &mut R) -> TowerSpec {
    let bound = max_exponent as i64;
    let exponent = |rng: &mut R| BigInt::from(rng.random_range(-bound..=bound));
    let moves = (0..d.saturating_sub(1))
        .map(|k| {
            if rng.random_bool(0.5) {
                Move::Product
            } else {
                Move::Node {
                    alpha_exponents: (0..k).map(|_| exponent(rng)).collect(),
                    t_exponents: (0..p).map(|_| exponent(rng)).collect(),
                }
            }
        })
        .collect();
    TowerSpec::new(p, moves)
}

#[cfg(test)]
mod tests {
    use super::*;
    use toric_towers::tower::validate_tower;

    #[test]
    fn deterministic() {
        assert_eq!(random_tower(2, 5, 3, 11), random_tower(2, 5, 3, 11));
        assert_ne!(random_tower(2, 5, 3, 11), random_tower(2, 5, 3, 12));
    }

    #[test]
    fn single_level() {
        assert!(random_tower(1, 1, 3, 0).moves.is_empty());
    }

    #[test]
    fn always_valid() {
        for seed in 0..200 {
            let spec = random_tower(1 + (seed % 3) as usize, 1 + (seed % 5) as usize, 3, seed);
            assert!(validate_tower(&spec).is_valid());
        }
    }
}
