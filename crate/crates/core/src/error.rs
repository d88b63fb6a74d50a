use thiserror::Error;

use crate::lattice::{Cone, LatticeVector};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("zero vector has no primitive representative")]
    ZeroVector,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix shape {rows}x{cols} does not match {len} entries")]
    MatrixShape {
        rows: usize,
        cols: usize,
        len: usize,
    },

    #[error("resource limit exceeded: {what} is {actual}, limit {limit}")]
    Resource {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("ray {ray} is not a ray of the fan")]
    UnknownRay { ray: LatticeVector },

    #[error("not Q-Cartier on cone {cone}")]
    NotQCartier { cone: Cone },

    #[error("valuation has no centre: {vector} lies outside the fan support")]
    NoCentre { vector: LatticeVector },

    #[error("map is not fan-compatible: image of cone {cone} lies in no target cone")]
    NotFanCompatible { cone: Cone },

    #[error("divisor not bounded above: its polyhedron is unbounded")]
    Unbounded,

    #[error("invalid tower: {0}")]
    InvalidTower(String),

    #[error("invalid curve germ: {0}")]
    InvalidGerm(String),

    #[error("base level has no fibration structure")]
    BaseLevel,

    #[error("level {level} out of range (tower has {levels} levels)")]
    LevelOutOfRange { level: usize, levels: usize },

    #[error("cone {cone} is not a cone of the level-{level} fan")]
    ConeNotInFan { cone: Cone, level: usize },

    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource { .. })
    }
}
