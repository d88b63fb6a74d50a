//! Toric divisors, characters, Cartier data and log discrepancies.
//!
//! Sign convention: Cartier data stores, for each maximal cone `σ`, a vector
//! `m_σ` with `<m_σ, u_i> = d_i` on the rays of `σ`. The support function of
//! the divisor is therefore `φ_D = -<m_σ, ·>` on `σ`.

mod cartier;
mod discrepancy;
mod divisor;

pub use cartier::{cartier_data, pullback_divisor, CartierData};
pub use discrepancy::{log_discrepancy, log_discrepancy_with_data, LogDiscrepancy};
pub use divisor::{
    boundary_divisor, canonical_divisor, character_divisor, regularity_subfan, Character,
    ToricDivisor,
};
