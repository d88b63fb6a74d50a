//! Exact combinatorics for special toric towers.
//!
//! The crate is organised bottom-up:
//!
//! * [`lattice`]: integer vectors and matrices, Hermite and Smith normal forms,
//!   rational polyhedral cones (double description) and fans.
//! * [`toric`]: toric divisors, characters, Cartier data, pullbacks and log
//!   discrepancies.
//! * [`tower`]: special toric towers built from product and node moves, their
//!   projective model, base change to a curve germ and the lc-place checks.
//! * [`polytope`]: divisor polytopes, normalized volumes and relative degrees
//!   on projective-space fibres.
//!
//! Everything is computed with arbitrary-precision integers and rationals.

pub mod error;
pub mod lattice;
pub mod limits;
pub mod polytope;
pub mod report;
pub mod toric;
pub mod tower;

pub use error::{Error, Result};
pub use lattice::{Cone, Fan, IntMatrix, LatticeVector};
pub use limits::Limits;
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
