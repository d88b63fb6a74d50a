//! Double description for cones `{x : <a_k, x> >= 0}`.
//!
//! Starts from the whole space (lineality = standard basis, no rays) and adds
//! one inequality at a time. Adjacency of rays is decided combinatorially from
//! their zero sets. All arithmetic is over `Z` with primitive normalisation
//! after every combination, so the output is deterministic for a given input
//! order.

use num_traits::{Signed, Zero};

use super::rational::{self, Q};
use super::LatticeVector;

#[derive(Clone, Debug)]
struct WorkRay {
    v: LatticeVector,
    zeros: ZeroSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct ZeroSet(Vec<u64>);

impl ZeroSet {
    fn with_capacity(n: usize) -> Self {
        ZeroSet(vec![0; n.div_ceil(64).max(1)])
    }

    fn first_n(n: usize, capacity: usize) -> Self {
        let mut z = Self::with_capacity(capacity);
        for k in 0..n {
            z.insert(k);
        }
        z
    }

    fn insert(&mut self, k: usize) {
        self.0[k / 64] |= 1 << (k % 64);
    }

    fn intersect(&self, other: &ZeroSet) -> ZeroSet {
        ZeroSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_subset_of(&self, other: &ZeroSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

/// Generators of `{x in R^dim : <a, x> >= 0 for all a in inequalities}` as a
/// lineality basis plus extreme rays (modulo the lineality space), both in
/// canonical form: the lineality basis is the primitive integer scaling of the
/// reduced row echelon basis, and rays are orthogonal to the lineality space.
/// Rays are sorted lexicographically.
pub(crate) fn cone_generators(
    dim: usize,
    inequalities: &[LatticeVector],
) -> (Vec<LatticeVector>, Vec<LatticeVector>) {
    let n = inequalities.len();
    let mut lineality: Vec<LatticeVector> = (0..dim).map(|i| LatticeVector::unit(dim, i)).collect();
    let mut rays: Vec<WorkRay> = Vec::new();

    for (k, a) in inequalities.iter().enumerate() {
        if let Some(idx) = lineality.iter().position(|l| !a.dot(l).is_zero()) {
            let mut l0 = lineality.remove(idx);
            if a.dot(&l0).is_negative() {
                l0 = -&l0;
            }
            let al0 = a.dot(&l0);
            let project = |v: &LatticeVector| -> LatticeVector {
                let w = &v.scale(&al0) - &l0.scale(&a.dot(v));
                w.primitive()
                    .expect("projection of an independent vector is non-zero")
            };
            lineality = lineality.iter().map(project).collect();
            for r in rays.iter_mut() {
                r.v = project(&r.v);
                r.zeros.insert(k);
            }
            rays.push(WorkRay {
                v: l0,
                zeros: ZeroSet::first_n(k, n),
            });
            continue;
        }

        let mut positive = Vec::new();
        let mut negative = Vec::new();
        let mut next = Vec::new();
        for r in &rays {
            let s = a.dot(&r.v);
            if s.is_zero() {
                let mut r = r.clone();
                r.zeros.insert(k);
                next.push(r);
            } else if s.is_positive() {
                positive.push((r, s));
            } else {
                negative.push((r, s));
            }
        }
        for (p, sp) in &positive {
            for (m, sm) in &negative {
                let common = p.zeros.intersect(&m.zeros);
                let blocked = rays.iter().any(|r| {
                    !std::ptr::eq(r, *p) && !std::ptr::eq(r, *m) && common.is_subset_of(&r.zeros)
                });
                if blocked {
                    continue;
                }
                // sp > 0 > sm: positive combination lying on <a, x> = 0
                let w = &m.v.scale(sp) - &p.v.scale(sm);
                let mut zeros = common;
                zeros.insert(k);
                next.push(WorkRay {
                    v: w.primitive().expect("adjacent rays are independent"),
                    zeros,
                });
            }
        }
        next.extend(positive.into_iter().map(|(r, _)| r.clone()));
        rays = next;
    }

    canonicalize(dim, lineality, rays.into_iter().map(|r| r.v).collect())
}

fn canonicalize(
    dim: usize,
    lineality: Vec<LatticeVector>,
    rays: Vec<LatticeVector>,
) -> (Vec<LatticeVector>, Vec<LatticeVector>) {
    let mut basis: Vec<Vec<Q>> = lineality.iter().map(|l| l.to_rational()).collect();
    rational::rref(&mut basis, dim);
    let lineality: Vec<LatticeVector> = basis
        .iter()
        .map(|row| rational::primitive_integer(row).expect("basis rows are non-zero"))
        .collect();
    let mut out: Vec<LatticeVector> = rays
        .iter()
        .map(|r| {
            let projected = rational::project_off(&r.to_rational(), &basis);
            rational::primitive_integer(&projected).expect("rays are not in the lineality space")
        })
        .collect();
    out.sort();
    out.dedup();
    (lineality, out)
}
