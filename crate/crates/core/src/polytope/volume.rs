use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::lattice::rational::{self, Q};
use crate::lattice::{Cone, Fan, LatticeVector};
use crate::toric::ToricDivisor;
use crate::{Error, Result};

/// A polytope with rational vertices. The vertex list is irredundant and
/// sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePolytope {
    ambient_dim: usize,
    vertices: Vec<Vec<BigRational>>,
}

impl LatticePolytope {
    /// Convex hull of `points`; only the vertices are kept.
    pub fn from_points(ambient_dim: usize, points: Vec<Vec<BigRational>>) -> Result<Self> {
        for p in &points {
            if p.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: p.len(),
                });
            }
        }
        let mut points = points;
        points.sort();
        points.dedup();
        if points.len() <= 1 {
            return Ok(LatticePolytope {
                ambient_dim,
                vertices: points,
            });
        }
        let lifted: Vec<LatticeVector> = points.iter().map(|p| homogenize(p)).collect();
        let extreme = Cone::new(ambient_dim + 1, lifted)?.description().rays;
        let mut vertices: Vec<Vec<Q>> = extreme.iter().map(dehomogenize).collect();
        vertices.sort();
        Ok(LatticePolytope {
            ambient_dim,
            vertices,
        })
    }

    pub fn from_i64s(ambient_dim: usize, points: &[&[i64]]) -> Result<Self> {
        Self::from_points(
            ambient_dim,
            points
                .iter()
                .map(|p| p.iter().map(|&x| rational::q(x)).collect())
                .collect(),
        )
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vertices(&self) -> &[Vec<BigRational>] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// `(1, p)` scaled to a primitive integer vector.
fn homogenize(p: &[Q]) -> LatticeVector {
    let mut v = vec![Q::one()];
    v.extend(p.iter().cloned());
    rational::primitive_integer(&v).expect("first coordinate is non-zero")
}

fn dehomogenize(v: &LatticeVector) -> Vec<Q> {
    let w = &v.entries()[0];
    v.entries()[1..]
        .iter()
        .map(|x| BigRational::new(x.clone(), w.clone()))
        .collect()
}

/// `P_D = {m : <m, u_i> >= -d_i}`, by intersecting every `n`-subset of facet
/// hyperplanes and keeping the feasible points.
pub fn divisor_polytope(fan: &Fan, divisor: &ToricDivisor) -> Result<LatticePolytope> {
    let n = fan.ambient_dim();
    let rays = fan.rays();
    if !fan.rays_positively_span() {
        return Err(Error::Unbounded);
    }
    let bounds: Vec<Q> = rays.iter().map(|u| -divisor.coefficient(u)).collect();
    let feasible = |m: &[Q]| {
        rays.iter()
            .zip(&bounds)
            .all(|(u, b)| &u.dot_rational(m) >= b)
    };
    let mut points = Vec::new();
    for subset in (0..rays.len()).combinations(n) {
        let a: Vec<Vec<Q>> = subset.iter().map(|&i| rays[i].to_rational()).collect();
        if rational::rank(&a, n) < n {
            continue;
        }
        let b: Vec<Q> = subset.iter().map(|&i| bounds[i].clone()).collect();
        let m = rational::solve(&a, &b, n).expect("full rank system is consistent");
        if feasible(&m) {
            points.push(m);
        }
    }
    LatticePolytope::from_points(n, points)
}

/// `n! · vol(P)` for a full-dimensional polytope in `R^n`; 0 otherwise.
///
/// The polytope is triangulated by recursive pyramids: over each facet not
/// containing a fixed vertex `v_0`, cone the facet's triangulation from `v_0`.
pub fn normalized_volume(polytope: &LatticePolytope) -> BigRational {
    let n = polytope.ambient_dim;
    if polytope.vertices.len() < n + 1 {
        return Q::zero();
    }
    if n == 0 {
        return Q::one();
    }
    let simplices = triangulate(&polytope.vertices, n);
    let full: Vec<_> = simplices.iter().filter(|s| s.len() == n + 1).collect();
    if full.is_empty() {
        return Q::zero();
    }
    full.iter()
        .map(|s| {
            let v0 = &polytope.vertices[s[0]];
            let rows: Vec<Vec<Q>> = s[1..]
                .iter()
                .map(|&i| {
                    polytope.vertices[i]
                        .iter()
                        .zip(v0)
                        .map(|(a, b)| a - b)
                        .collect()
                })
                .collect();
            rational::determinant(&rows).abs()
        })
        .fold(Q::zero(), |acc, x| acc + x)
}

/// Triangulates the convex hull of `vertices[idx]`; returns simplices as
/// index lists whose length is the affine dimension plus one.
fn triangulate(vertices: &[Vec<Q>], n: usize) -> Vec<Vec<usize>> {
    triangulate_subset(vertices, n, &(0..vertices.len()).collect::<Vec<_>>())
}

fn triangulate_subset(vertices: &[Vec<Q>], n: usize, idx: &[usize]) -> Vec<Vec<usize>> {
    if idx.len() == 1 {
        return vec![idx.to_vec()];
    }
    let lifted: Vec<LatticeVector> = idx.iter().map(|&i| homogenize(&vertices[i])).collect();
    let hull = Cone::new(n + 1, lifted.clone()).expect("dimensions agree");
    let facets = hull.dual_description();
    // affine dimension = rank of the lifted cone - 1
    if n + 1 - facets.lineality.len() == 2 {
        // a segment: its two endpoints
        let ends: Vec<usize> = idx
            .iter()
            .zip(&lifted)
            .filter(|(_, v)| facets.rays.iter().any(|f| f.dot(v).is_zero()))
            .map(|(&i, _)| i)
            .collect();
        return vec![ends];
    }
    let apex = idx[0];
    let apex_lifted = &lifted[0];
    let mut out = Vec::new();
    for f in &facets.rays {
        if f.dot(apex_lifted).is_zero() {
            continue;
        }
        let on_facet: Vec<usize> = idx
            .iter()
            .zip(&lifted)
            .filter(|(_, v)| f.dot(v).is_zero())
            .map(|(&i, _)| i)
            .collect();
        for mut s in triangulate_subset(vertices, n, &on_facet) {
            s.insert(0, apex);
            out.push(s);
        }
    }
    out
}

/// Least common multiple of the vertex denominators.
pub fn denominator(polytope: &LatticePolytope) -> BigInt {
    polytope
        .vertices
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}
