/// Caps that keep the combinatorics at desk scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest ambient lattice rank accepted by cone duality and tower building.
    pub max_dim: usize,
    /// Largest number of distinct rays a tower level may carry.
    pub max_rays: usize,
}

impl Limits {
    pub const DEFAULT_MAX_DIM: usize = 10;
    pub const DEFAULT_MAX_RAYS: usize = 500;

    pub fn check_dim(&self, dim: usize) -> crate::Result<()> {
        if dim > self.max_dim {
            return Err(crate::Error::Resource {
                what: "ambient dimension",
                actual: dim,
                limit: self.max_dim,
            });
        }
        Ok(())
    }

    pub fn check_rays(&self, rays: usize) -> crate::Result<()> {
        if rays > self.max_rays {
            return Err(crate::Error::Resource {
                what: "ray count",
                actual: rays,
                limit: self.max_rays,
            });
        }
        Ok(())
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_dim: Self::DEFAULT_MAX_DIM,
            max_rays: Self::DEFAULT_MAX_RAYS,
        }
    }
}
