use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{dd, rational, LatticeVector};
use crate::{Error, Limits, Result};

/// A rational polyhedral cone in `R^n`, given by lattice generators.
///
/// Generators are kept sorted and deduplicated. Cones that belong to a fan
/// are expected to carry their primitive extreme rays as generators; a cone
/// that contains a line is stored with both `l` and `-l` for each vector `l`
/// of a lineality basis.
pub struct Cone {
    ambient_dim: usize,
    generators: Vec<LatticeVector>,
    facet_normals: OnceLock<Vec<LatticeVector>>,
}

/// Generators of a cone split into a lineality basis and rays orthogonal to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeDescription {
    pub lineality: Vec<LatticeVector>,
    pub rays: Vec<LatticeVector>,
}

impl ConeDescription {
    pub fn into_cone(self, ambient_dim: usize) -> Cone {
        let mut gens = self.rays;
        for l in &self.lineality {
            gens.push(-l);
            gens.push(l.clone());
        }
        Cone::from_sorted(ambient_dim, gens)
    }
}

impl Cone {
    /// Cone spanned by `generators`, kept as given (zero vectors dropped).
    pub fn new(ambient_dim: usize, generators: Vec<LatticeVector>) -> Result<Cone> {
        for g in &generators {
            g.check_dim(ambient_dim)?;
        }
        Ok(Self::from_sorted(
            ambient_dim,
            generators.into_iter().filter(|g| !g.is_zero()).collect(),
        ))
    }

    /// Cone spanned by `vectors`, each replaced by its primitive representative.
    pub fn from_vectors(ambient_dim: usize, vectors: &[LatticeVector]) -> Result<Cone> {
        let mut gens = Vec::with_capacity(vectors.len());
        for v in vectors {
            v.check_dim(ambient_dim)?;
            if !v.is_zero() {
                gens.push(v.primitive()?);
            }
        }
        Ok(Self::from_sorted(ambient_dim, gens))
    }

    pub fn from_i64s(ambient_dim: usize, generators: &[&[i64]]) -> Result<Cone> {
        Self::new(
            ambient_dim,
            generators
                .iter()
                .map(|g| LatticeVector::from_i64s(g))
                .collect(),
        )
    }

    pub(crate) fn from_sorted(ambient_dim: usize, mut generators: Vec<LatticeVector>) -> Cone {
        generators.sort();
        generators.dedup();
        Cone {
            ambient_dim,
            generators,
            facet_normals: OnceLock::new(),
        }
    }

    pub fn zero(ambient_dim: usize) -> Cone {
        Self::from_sorted(ambient_dim, Vec::new())
    }

    /// The positive orthant, generated by the standard basis.
    pub fn orthant(ambient_dim: usize) -> Cone {
        Self::from_sorted(
            ambient_dim,
            (0..ambient_dim)
                .map(|i| LatticeVector::unit(ambient_dim, i))
                .collect(),
        )
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn generators(&self) -> &[LatticeVector] {
        &self.generators
    }

    /// Alias for [`Cone::generators`] when the cone is a fan cone.
    pub fn rays(&self) -> &[LatticeVector] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Dimension of the linear span.
    pub fn dim(&self) -> usize {
        rational::rank_of_vectors(&self.generators, self.ambient_dim)
    }

    pub fn is_simplicial(&self) -> bool {
        self.dim() == self.generators.len()
    }

    /// Inequality description: `v` is in the cone iff `<n, v> >= 0` for every
    /// returned `n`. These are the generators of the dual cone; equalities
    /// appear as pairs `n, -n`. Memoized.
    pub fn facet_normals(&self) -> &[LatticeVector] {
        if let Some(normals) = self.facet_normals.get() {
            return normals;
        }
        let normals = self
            .dual_description()
            .into_cone(self.ambient_dim)
            .generators;
        let _ = self.facet_normals.set(normals);
        self.facet_normals.get().expect("just initialised")
    }

    /// Lineality basis and extreme rays of the dual cone.
    pub fn dual_description(&self) -> ConeDescription {
        let (lineality, rays) = dd::cone_generators(self.ambient_dim, &self.generators);
        ConeDescription { lineality, rays }
    }

    /// Lineality basis and extreme rays of this cone.
    pub fn description(&self) -> ConeDescription {
        let normals = self.facet_normals().to_vec();
        let (lineality, rays) = dd::cone_generators(self.ambient_dim, &normals);
        ConeDescription { lineality, rays }
    }

    /// The same cone, generated by its primitive extreme rays (plus lineality
    /// pairs if it contains a line).
    pub fn canonical(&self) -> Cone {
        self.description().into_cone(self.ambient_dim)
    }

    pub fn is_strongly_convex(&self) -> bool {
        self.description().lineality.is_empty()
    }

    pub fn contains(&self, v: &LatticeVector) -> Result<bool> {
        v.check_dim(self.ambient_dim)?;
        Ok(self.facet_normals().iter().all(|n| !n.dot(v).is_negative()))
    }

    pub fn contains_cone(&self, other: &Cone) -> Result<bool> {
        for g in &other.generators {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Same point set as `other`.
    pub fn equals_as_set(&self, other: &Cone) -> Result<bool> {
        Ok(self.contains_cone(other)? && other.contains_cone(self)?)
    }

    /// Whether some generator lies in the relative interior, tested as: no
    /// facet normal that is non-trivial on the cone vanishes on `v`.
    pub fn in_relative_interior(&self, v: &LatticeVector) -> Result<bool> {
        if !self.contains(v)? {
            return Ok(false);
        }
        for n in self.facet_normals() {
            let trivial = self.generators.iter().all(|g| n.dot(g).is_zero());
            if !trivial && n.dot(v).is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn intersection(&self, other: &Cone) -> Result<Cone> {
        if other.ambient_dim != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        let mut inequalities = self.facet_normals().to_vec();
        inequalities.extend(other.facet_normals().iter().cloned());
        let (lineality, rays) = dd::cone_generators(self.ambient_dim, &inequalities);
        Ok(ConeDescription { lineality, rays }.into_cone(self.ambient_dim))
    }

    /// Whether `self` is a face of the strongly convex cone `outer`.
    pub fn is_face_of(&self, outer: &Cone) -> Result<bool> {
        if !outer.contains_cone(self)? {
            return Ok(false);
        }
        let zero = BigInt::zero();
        let interior_point = self
            .generators
            .iter()
            .fold(LatticeVector::zero(self.ambient_dim), |acc, g| &acc + g);
        let tight: Vec<&LatticeVector> = outer
            .facet_normals()
            .iter()
            .filter(|n| n.dot(&interior_point) == zero)
            .collect();
        // smallest face of `outer` containing `self`
        for g in &outer.generators {
            if tight.iter().all(|n| n.dot(g) == zero) && !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All faces (including the zero cone and the cone itself), each generated
    /// by the subset of generators it contains. Assumes the generators are the
    /// extreme rays of a strongly convex cone.
    pub fn faces(&self) -> Vec<Cone> {
        let normals = self.facet_normals();
        let all: BTreeSet<usize> = (0..self.generators.len()).collect();
        let zero_sets: Vec<BTreeSet<usize>> = normals
            .iter()
            .map(|n| {
                (0..self.generators.len())
                    .filter(|&i| n.dot(&self.generators[i]).is_zero())
                    .collect()
            })
            .collect();
        let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let mut queue = vec![all];
        while let Some(face) = queue.pop() {
            if !seen.insert(face.clone()) {
                continue;
            }
            for z in &zero_sets {
                let next: BTreeSet<usize> = face.intersection(z).copied().collect();
                if !seen.contains(&next) {
                    queue.push(next);
                }
            }
        }
        seen.into_iter()
            .map(|idx| {
                Cone::from_sorted(
                    self.ambient_dim,
                    idx.into_iter()
                        .map(|i| self.generators[i].clone())
                        .collect(),
                )
            })
            .collect()
    }

    /// Cartesian product `self x other` in `R^(m+n)`.
    pub fn product(&self, other: &Cone) -> Cone {
        let mut gens: Vec<LatticeVector> = self
            .generators
            .iter()
            .map(|g| g.extend(&vec![BigInt::zero(); other.ambient_dim]))
            .collect();
        let pad = LatticeVector::zero(self.ambient_dim);
        gens.extend(other.generators.iter().map(|g| pad.extend(g.entries())));
        Cone::from_sorted(self.ambient_dim + other.ambient_dim, gens)
    }

    /// Whether `<m, g> >= 0` for every generator `g`.
    pub fn is_nonnegative_on(&self, m: &LatticeVector) -> bool {
        self.generators.iter().all(|g| !m.dot(g).is_negative())
    }
}

/// The dual cone `{m : <m, v> >= 0 for all v in c}`, using the default limits.
pub fn dual_cone(c: &Cone) -> Result<Cone> {
    dual_cone_with_limits(c, &Limits::default())
}

pub fn dual_cone_with_limits(c: &Cone, limits: &Limits) -> Result<Cone> {
    limits.check_dim(c.ambient_dim)?;
    Ok(c.dual_description().into_cone(c.ambient_dim))
}

impl Clone for Cone {
    fn clone(&self) -> Self {
        Cone {
            ambient_dim: self.ambient_dim,
            generators: self.generators.clone(),
            facet_normals: self.facet_normals.clone(),
        }
    }
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Cone")
            .field("ambient_dim", &self.ambient_dim)
            .field("generators", &self.generators)
            .finish()
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return write!(f, "{{0}}");
        }
        write!(f, "cone(")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.generators == other.generators
    }
}

impl Eq for Cone {}

impl Hash for Cone {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient_dim.hash(state);
        self.generators.hash(state);
    }
}

impl PartialOrd for Cone {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cone {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ambient_dim, &self.generators).cmp(&(other.ambient_dim, &other.generators))
    }
}
