use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// A divisor `D` on `P^n x Z` over `Z`, recorded by its horizontal components
/// (each a hyperplane class, so only their total degree matters) and its
/// vertical components, together with the polarization `A = a·H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveDivisorData {
    fiber_dim: usize,
    horizontal: Vec<BigRational>,
    vertical: Vec<BigRational>,
    polarization: BigInt,
}

impl ProjectiveDivisorData {
    pub fn new(
        fiber_dim: usize,
        horizontal: Vec<BigRational>,
        vertical: Vec<BigRational>,
        polarization: BigInt,
    ) -> Result<Self> {
        if fiber_dim == 0 {
            return Err(Error::Invalid("fibre dimension must be positive".into()));
        }
        if polarization < BigInt::one() {
            return Err(Error::Invalid(format!(
                "polarization degree must be at least 1, got {polarization}"
            )));
        }
        Ok(ProjectiveDivisorData {
            fiber_dim,
            horizontal,
            vertical,
            polarization,
        })
    }

    /// `D|_F = k·H` with `k` the given hyperplane multiple, `A = a·H`.
    pub fn hyperplane_multiple(fiber_dim: usize, k: i64, a: i64) -> Result<Self> {
        Self::new(
            fiber_dim,
            vec![BigRational::from_integer(k.into())],
            Vec::new(),
            BigInt::from(a),
        )
    }

    pub fn fiber_dim(&self) -> usize {
        self.fiber_dim
    }

    pub fn horizontal(&self) -> &[BigRational] {
        &self.horizontal
    }

    pub fn vertical(&self) -> &[BigRational] {
        &self.vertical
    }

    pub fn polarization(&self) -> &BigInt {
        &self.polarization
    }

    /// Degree of `D|_F` in multiples of the hyperplane class.
    pub fn hyperplane_degree(&self) -> BigRational {
        self.horizontal
            .iter()
            .fold(BigRational::zero(), |s, c| s + c)
    }
}

/// `deg_{A/Z} D = (D|_F)·(A|_F)^{n-1} = deg(D|_F) · a^{n-1}`. Vertical
/// components do not meet the general fibre.
pub fn relative_degree_on_p(data: &ProjectiveDivisorData) -> BigRational {
    let a = BigRational::from_integer(data.polarization.clone());
    data.hyperplane_degree() * pow(&a, data.fiber_dim - 1)
}

/// `vol_{/Z}(D) = vol(D|_F) = k^n` for `D|_F = k·H`, and 0 when `k < 0`.
pub fn relative_volume_on_p(data: &ProjectiveDivisorData) -> BigRational {
    let k = data.hyperplane_degree();
    if k.is_negative() {
        return BigRational::zero();
    }
    pow(&k, data.fiber_dim)
}

fn pow(x: &BigRational, e: usize) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * x)
}
