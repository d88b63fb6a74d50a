use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;

use super::{Cone, LatticeVector, ValidationReport};
use crate::{Error, Result};

/// A fan, stored by its maximal cones. Faces are derived on demand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fan {
    ambient_dim: usize,
    maximal_cones: Vec<Cone>,
    rays: Vec<LatticeVector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FanViolation {
    NonPrimitiveRay(LatticeVector),
    NotStronglyConvex(Cone),
    RedundantGenerator {
        cone: Cone,
        generator: LatticeVector,
    },
    IntersectionNotFace(Cone, Cone),
}

impl fmt::Display for FanViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FanViolation::NonPrimitiveRay(r) => write!(f, "non-primitive ray {r}"),
            FanViolation::NotStronglyConvex(c) => write!(f, "cone {c} is not strongly convex"),
            FanViolation::RedundantGenerator { cone, generator } => {
                write!(f, "generator {generator} of {cone} is not an extreme ray")
            }
            FanViolation::IntersectionNotFace(a, b) => {
                write!(f, "intersection not a face: {a} and {b}")
            }
        }
    }
}

impl Fan {
    /// Builds a fan from cones. Cones whose generator set is contained in
    /// another cone's generator set are treated as faces and dropped; no other
    /// check is made (see [`Fan::validate`]).
    pub fn new(ambient_dim: usize, cones: Vec<Cone>) -> Result<Fan> {
        for c in &cones {
            if c.ambient_dim() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: c.ambient_dim(),
                });
            }
        }
        let mut cones = cones;
        cones.sort();
        cones.dedup();
        let sets: Vec<BTreeSet<&LatticeVector>> = cones
            .iter()
            .map(|c| c.generators().iter().collect())
            .collect();
        let maximal_cones: Vec<Cone> = cones
            .iter()
            .enumerate()
            .filter(|(i, _)| {
                !sets
                    .iter()
                    .enumerate()
                    .any(|(j, s)| j != *i && sets[*i].is_subset(s) && sets[*i].len() < s.len())
            })
            .map(|(_, c)| c.clone())
            .collect();
        let maximal_cones = if maximal_cones.is_empty() {
            vec![Cone::zero(ambient_dim)]
        } else {
            maximal_cones
        };
        let rays: Vec<LatticeVector> = maximal_cones
            .iter()
            .flat_map(|c| c.generators().iter().cloned())
            .sorted()
            .dedup()
            .collect();
        Ok(Fan {
            ambient_dim,
            maximal_cones,
            rays,
        })
    }

    /// The fan of the torus: only the zero cone.
    pub fn torus(ambient_dim: usize) -> Fan {
        Fan {
            ambient_dim,
            maximal_cones: vec![Cone::zero(ambient_dim)],
            rays: Vec::new(),
        }
    }

    /// The fan of affine space: the positive orthant and its faces.
    pub fn affine_space(dim: usize) -> Fan {
        let orthant = Cone::orthant(dim);
        let rays = orthant.generators().to_vec();
        Fan {
            ambient_dim: dim,
            maximal_cones: vec![orthant],
            rays,
        }
    }

    /// The complete fan of `P^n`: rays `e_1, ..., e_n, -(e_1 + ... + e_n)`.
    pub fn projective_space(n: usize) -> Fan {
        if n == 0 {
            return Fan::torus(0);
        }
        let mut rays: Vec<LatticeVector> = (0..n).map(|i| LatticeVector::unit(n, i)).collect();
        rays.push(LatticeVector::new(vec![BigInt::from(-1); n]));
        let cones = rays
            .iter()
            .cloned()
            .combinations(n)
            .map(|gens| Cone::from_sorted(n, gens))
            .collect();
        Fan::new(n, cones).expect("dimensions agree")
    }

    /// Product fan with cones `sigma x tau`.
    pub fn product(&self, other: &Fan) -> Fan {
        let cones = self
            .maximal_cones
            .iter()
            .cartesian_product(&other.maximal_cones)
            .map(|(a, b)| a.product(b))
            .collect();
        Fan::new(self.ambient_dim + other.ambient_dim, cones).expect("dimensions agree")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn maximal_cones(&self) -> &[Cone] {
        &self.maximal_cones
    }

    /// All rays of the fan, sorted lexicographically.
    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn has_ray(&self, ray: &LatticeVector) -> bool {
        self.rays.binary_search(ray).is_ok()
    }

    /// Every cone of the fan, faces included, without duplicates.
    pub fn cones(&self) -> Vec<Cone> {
        self.maximal_cones
            .iter()
            .flat_map(|c| c.faces())
            .sorted()
            .dedup()
            .collect()
    }

    pub fn contains_cone(&self, cone: &Cone) -> bool {
        self.maximal_cones.iter().any(|m| {
            cone.generators().iter().all(|g| m.generators().contains(g)) && {
                cone.is_face_of(m).unwrap_or(false)
            }
        })
    }

    /// Some maximal cone containing `v`, if `v` lies in the support.
    pub fn cone_containing(&self, v: &LatticeVector) -> Result<Option<&Cone>> {
        v.check_dim(self.ambient_dim)?;
        for c in &self.maximal_cones {
            if c.contains(v)? {
                return Ok(Some(c));
            }
        }
        Ok(None)
    }

    pub fn support_contains(&self, v: &LatticeVector) -> Result<bool> {
        Ok(self.cone_containing(v)?.is_some())
    }

    /// Star subdivision at a primitive vector `v` of the support: every cone
    /// containing `v` is replaced by the cones spanned by `v` and its faces
    /// that do not contain `v`.
    pub fn star_subdivide(&self, v: &LatticeVector) -> Result<Fan> {
        v.check_dim(self.ambient_dim)?;
        let v = v.primitive()?;
        if !self.support_contains(&v)? {
            return Err(Error::NoCentre { vector: v });
        }
        let mut cones = Vec::new();
        for sigma in &self.maximal_cones {
            if !sigma.contains(&v)? {
                cones.push(sigma.clone());
                continue;
            }
            let d = sigma.dim();
            for face in sigma.faces() {
                if face.dim() + 1 == d && !face.contains(&v)? {
                    let mut gens = face.generators().to_vec();
                    gens.push(v.clone());
                    cones.push(Cone::from_sorted(self.ambient_dim, gens));
                }
            }
        }
        Fan::new(self.ambient_dim, cones)
    }

    /// Checks the fan axioms: primitive rays, strongly convex cones given by
    /// extreme rays, and pairwise intersections that are common faces.
    pub fn validate(&self) -> ValidationReport<FanViolation> {
        let mut violations = Vec::new();
        for r in &self.rays {
            if !r.is_primitive() {
                violations.push(FanViolation::NonPrimitiveRay(r.clone()));
            }
        }
        let mut convex = vec![true; self.maximal_cones.len()];
        for (i, c) in self.maximal_cones.iter().enumerate() {
            let desc = c.description();
            if !desc.lineality.is_empty() {
                convex[i] = false;
                violations.push(FanViolation::NotStronglyConvex(c.clone()));
                continue;
            }
            for g in c.generators() {
                let Ok(p) = g.primitive() else { continue };
                if desc.rays.binary_search(&p).is_err() {
                    violations.push(FanViolation::RedundantGenerator {
                        cone: c.clone(),
                        generator: g.clone(),
                    });
                }
            }
        }
        for (i, j) in (0..self.maximal_cones.len()).tuple_combinations() {
            if !convex[i] || !convex[j] {
                continue;
            }
            let (a, b) = (&self.maximal_cones[i], &self.maximal_cones[j]);
            let ok = a
                .intersection(b)
                .and_then(|tau| Ok(tau.is_face_of(a)? && tau.is_face_of(b)?))
                .unwrap_or(false);
            if !ok {
                violations.push(FanViolation::IntersectionNotFace(a.clone(), b.clone()));
            }
        }
        ValidationReport::new(violations)
    }

    /// Whether the rays positively span the ambient space (necessary for
    /// completeness).
    pub fn rays_positively_span(&self) -> bool {
        let desc = Cone::from_sorted(self.ambient_dim, self.rays.clone()).dual_description();
        desc.rays.is_empty() && desc.lineality.is_empty()
    }
}

impl fmt::Display for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "fan in Z^{} [", self.ambient_dim)?;
        for (i, c) in self.maximal_cones.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> LatticeVector {
        LatticeVector::from_i64s(x)
    }

    fn cone(dim: usize, gens: &[&[i64]]) -> Cone {
        Cone::from_i64s(dim, gens).unwrap()
    }

    #[test]
    fn affine_plane_is_valid() {
        let f = Fan::affine_space(2);
        assert!(f.validate().is_valid());
        assert_eq!(f.cones().len(), 4);
    }

    #[test]
    fn overlapping_cones_are_rejected() {
        let f = Fan::new(
            2,
            vec![cone(2, &[&[1, 0], &[1, 2]]), cone(2, &[&[1, 1], &[0, 1]])],
        )
        .unwrap();
        let report = f.validate();
        assert_eq!(report.violations.len(), 1);
        assert!(report.violations[0]
            .to_string()
            .starts_with("intersection not a face"));
    }

    #[test]
    fn non_primitive_ray_is_reported() {
        let f = Fan::new(2, vec![cone(2, &[&[2, 4], &[1, 0]])]).unwrap();
        let report = f.validate();
        assert_eq!(
            report.violations,
            vec![FanViolation::NonPrimitiveRay(v(&[2, 4]))]
        );
        assert!(report.violations[0]
            .to_string()
            .contains("non-primitive ray"));
    }

    #[test]
    fn half_plane_is_not_strongly_convex() {
        let f = Fan::new(2, vec![cone(2, &[&[1, 0], &[0, 1], &[0, -1]])]).unwrap();
        assert!(matches!(
            f.validate().violations.as_slice(),
            [FanViolation::NotStronglyConvex(_)]
        ));
    }

    #[test]
    fn projective_spaces_are_complete_and_valid() {
        for n in 1..=3 {
            let f = Fan::projective_space(n);
            assert_eq!(f.maximal_cones().len(), n + 1);
            assert_eq!(f.rays().len(), n + 1);
            assert!(f.validate().is_valid());
            assert!(f.rays_positively_span());
        }
        assert!(!Fan::affine_space(2).rays_positively_span());
    }

    #[test]
    fn faces_are_dropped_on_construction() {
        let f = Fan::new(
            2,
            vec![Cone::orthant(2), cone(2, &[&[1, 0]]), Cone::zero(2)],
        )
        .unwrap();
        assert_eq!(f.maximal_cones(), &[Cone::orthant(2)]);
        let t = Fan::new(2, vec![]).unwrap();
        assert_eq!(t, Fan::torus(2));
    }

    #[test]
    fn star_subdivision_of_the_plane() {
        let f = Fan::affine_space(2).star_subdivide(&v(&[1, 1])).unwrap();
        assert_eq!(
            f.maximal_cones(),
            &[cone(2, &[&[0, 1], &[1, 1]]), cone(2, &[&[1, 0], &[1, 1]])]
        );
        assert!(f.validate().is_valid());
        let f3 = Fan::affine_space(3).star_subdivide(&v(&[1, 1, 0])).unwrap();
        assert_eq!(f3.maximal_cones().len(), 2);
        assert!(f3.validate().is_valid());
        assert!(Fan::affine_space(2).star_subdivide(&v(&[-1, 1])).is_err());
    }

    #[test]
    fn product_fan() {
        let f = Fan::affine_space(1).product(&Fan::projective_space(1));
        assert_eq!(f.rays(), &[v(&[0, -1]), v(&[0, 1]), v(&[1, 0])]);
        assert_eq!(f.maximal_cones().len(), 2);
        assert!(f.validate().is_valid());
    }
}
