//! Small exact linear-algebra helpers over `Q`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::LatticeVector;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Row-reduces `rows` in place to reduced row echelon form and returns the
/// pivot columns.
pub fn rref(rows: &mut Vec<Vec<Q>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..cols {
                    let delta = &f * &rows[r][j];
                    rows[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Q>], cols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, cols).len()
}

pub fn rank_of_vectors(vectors: &[LatticeVector], dim: usize) -> usize {
    let rows: Vec<Vec<Q>> = vectors.iter().map(|v| v.to_rational()).collect();
    rank(&rows, dim)
}

/// Solves `a x = b` exactly. Returns the particular solution with all free
/// variables set to zero, or `None` if the system is inconsistent.
pub fn solve(a: &[Vec<Q>], b: &[Q], cols: usize) -> Option<Vec<Q>> {
    let mut aug: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, cols + 1);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (row, &c) in aug.iter().zip(&pivots) {
        x[c] = row[cols].clone();
    }
    Some(x)
}

pub fn determinant(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        for i in c + 1..n {
            if !a[i][c].is_zero() {
                let f = &a[i][c] / &a[c][c];
                for j in c..n {
                    let delta = &f * &a[c][j];
                    a[i][j] -= delta;
                }
            }
        }
    }
    det
}

/// Scales a non-zero rational vector to the primitive integer vector with the
/// same direction.
pub fn primitive_integer(v: &[Q]) -> Option<LatticeVector> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &l).to_integer()).collect();
    LatticeVector::new(ints).primitive().ok()
}

/// Orthogonal projection of `v` onto the complement of `span(basis)`.
pub fn project_off(v: &[Q], basis: &[Vec<Q>]) -> Vec<Q> {
    if basis.is_empty() {
        return v.to_vec();
    }
    let k = basis.len();
    let dot = |a: &[Q], b: &[Q]| {
        a.iter()
            .zip(b)
            .map(|(x, y)| x * y)
            .fold(Q::zero(), |s, t| s + t)
    };
    let gram: Vec<Vec<Q>> = basis
        .iter()
        .map(|a| basis.iter().map(|b| dot(a, b)).collect())
        .collect();
    let rhs: Vec<Q> = basis.iter().map(|a| dot(a, v)).collect();
    let coeffs = solve(&gram, &rhs, k).expect("gram matrix of a basis is invertible");
    let mut out = v.to_vec();
    for (c, b) in coeffs.iter().zip(basis) {
        for (o, x) in out.iter_mut().zip(b) {
            *o -= c * x;
        }
    }
    out
}

pub fn is_integral(x: &Q) -> bool {
    x.is_integer()
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}
