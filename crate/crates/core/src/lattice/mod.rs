//! Exact integer linear algebra, rational polyhedral cones and fans.

mod cone;
mod dd;
mod fan;
mod matrix;
pub mod rational;
mod vector;

pub use cone::{dual_cone, dual_cone_with_limits, Cone, ConeDescription};
pub use fan::{Fan, FanViolation};
pub use matrix::{hnf, is_hermite_normal_form, snf, IntMatrix};
pub use vector::{primitive, LatticeVector};

/// A list of violations found by a structural check. Empty means valid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport<V> {
    pub violations: Vec<V>,
}

impl<V> ValidationReport<V> {
    pub fn new(violations: Vec<V>) -> Self {
        ValidationReport { violations }
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl<V> Default for ValidationReport<V> {
    fn default() -> Self {
        ValidationReport {
            violations: Vec::new(),
        }
    }
}
