use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{self, Q};
use super::LatticeVector;
use crate::{Error, Result};

/// A dense integer matrix in row-major order.
///
/// As a lattice map `Z^cols -> Z^rows` it acts on column vectors by
/// [`IntMatrix::apply`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::MatrixShape {
                rows,
                cols,
                len: data.len(),
            });
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn from_i64s(rows: usize, cols: usize, data: &[i64]) -> Result<Self> {
        Self::new(rows, cols, data.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Builds a matrix whose rows are the given vectors.
    pub fn from_rows(cols: usize, rows: &[LatticeVector]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            r.check_dim(cols)?;
            data.extend(r.entries().iter().cloned());
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// The coordinate projection `Z^from -> Z^to` onto the first `to` entries.
    pub fn coordinate_projection(from: usize, to: usize) -> Self {
        let mut m = Self::zero(to, from);
        for i in 0..to.min(from) {
            m.data[i * from + i] = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigInt) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> LatticeVector {
        LatticeVector::new(self.data[r * self.cols..(r + 1) * self.cols].to_vec())
    }

    pub fn column(&self, c: usize) -> LatticeVector {
        LatticeVector::new((0..self.rows).map(|r| self.get(r, c).clone()).collect())
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// Image of a column vector.
    pub fn apply(&self, v: &LatticeVector) -> Result<LatticeVector> {
        v.check_dim(self.cols)?;
        Ok(LatticeVector::new(
            (0..self.rows).map(|r| self.row(r).dot(v)).collect(),
        ))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn determinant(&self) -> Option<BigInt> {
        if !self.is_square() {
            return None;
        }
        let d = rational::determinant(&self.to_rational_rows());
        Some(d.to_integer())
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().is_some_and(|d| d.abs().is_one())
    }

    pub fn rank(&self) -> usize {
        rational::rank(&self.to_rational_rows(), self.cols)
    }

    pub(crate) fn to_rational_rows(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|r| self.row(r).to_rational()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let i = r * self.cols + c;
            self.data[i] = -&self.data[i];
        }
    }

    /// row[target] -= k * row[source]
    fn sub_row(&mut self, target: usize, source: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let delta = k * &self.data[source * self.cols + c];
            self.data[target * self.cols + c] -= delta;
        }
    }

    /// col[target] -= k * col[source]
    fn sub_col(&mut self, target: usize, source: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let delta = k * &self.data[r * self.cols + source];
            self.data[r * self.cols + target] -= delta;
        }
    }

    /// Replaces rows (p, q) by (x*p + y*q, u*p + v*q).
    fn combine_rows(&mut self, p: usize, q: usize, x: &BigInt, y: &BigInt, u: &BigInt, v: &BigInt) {
        for c in 0..self.cols {
            let a = self.data[p * self.cols + c].clone();
            let b = self.data[q * self.cols + c].clone();
            self.data[p * self.cols + c] = x * &a + y * &b;
            self.data[q * self.cols + c] = u * &a + v * &b;
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.row(r))?;
        }
        write!(f, "]")
    }
}

/// Returns `(g, x, y)` with `x*a + y*b = g = gcd(a, b) >= 0`.
fn extended_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let quotient = &old_r / &r;
        let next_r = &old_r - &quotient * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &quotient * &s;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = &old_t - &quotient * &t;
        old_t = std::mem::replace(&mut t, next_t);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Row-style Hermite normal form: returns `(H, U)` with `U` unimodular and
/// `H = U * m` upper echelon, pivots positive and the entries above each pivot
/// reduced into `[0, pivot)`.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut pivot_row = 0;
    for col in 0..m.cols {
        if pivot_row == m.rows {
            break;
        }
        for r in pivot_row + 1..m.rows {
            let b = h.get(r, col).clone();
            if b.is_zero() {
                continue;
            }
            let a = h.get(pivot_row, col).clone();
            let (g, x, y) = extended_gcd(&a, &b);
            let (bu, av) = (-(&b / &g), &a / &g);
            h.combine_rows(pivot_row, r, &x, &y, &bu, &av);
            u.combine_rows(pivot_row, r, &x, &y, &bu, &av);
        }
        let pivot = h.get(pivot_row, col).clone();
        if pivot.is_zero() {
            continue;
        }
        if pivot.is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        let pivot = h.get(pivot_row, col).clone();
        for r in 0..pivot_row {
            let k = h.get(r, col).div_floor(&pivot);
            h.sub_row(r, pivot_row, &k);
            u.sub_row(r, pivot_row, &k);
        }
        pivot_row += 1;
    }
    (h, u)
}

/// The normal-form predicate that [`hnf`] guarantees.
pub fn is_hermite_normal_form(h: &IntMatrix) -> bool {
    let mut last_pivot: Option<usize> = None;
    let mut seen_zero_row = false;
    for r in 0..h.rows {
        let lead = (0..h.cols).find(|&c| !h.get(r, c).is_zero());
        match lead {
            None => seen_zero_row = true,
            Some(c) => {
                if seen_zero_row || last_pivot.is_some_and(|p| c <= p) {
                    return false;
                }
                let pivot = h.get(r, c);
                if !pivot.is_positive() {
                    return false;
                }
                for above in 0..r {
                    let x = h.get(above, c);
                    if x.is_negative() || x >= pivot {
                        return false;
                    }
                }
                last_pivot = Some(c);
            }
        }
    }
    true
}

/// Smith normal form: returns `(S, U, V)` with `S = U * m * V` diagonal,
/// non-negative, each diagonal entry dividing the next, `U` and `V`
/// unimodular.
pub fn snf(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let (rows, cols) = (m.rows, m.cols);
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = s.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < s.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return (s, u, v);
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let p = s.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..rows {
                let k = s.get(i, t) / &p;
                s.sub_row(i, t, &k);
                u.sub_row(i, t, &k);
                clean &= s.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                let k = s.get(t, j) / &p;
                s.sub_col(j, t, &k);
                v.sub_col(j, t, &k);
                clean &= s.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(s.get(i, j) % &p).is_zero()));
            match offender {
                // Pull the offending row into row t; the next pass leaves a
                // remainder smaller than p.
                Some(i) => {
                    let minus_one = -BigInt::one();
                    s.sub_row(t, i, &minus_one);
                    u.sub_row(t, i, &minus_one);
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    (s, u, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: usize, cols: usize, data: &[i64]) -> IntMatrix {
        IntMatrix::from_i64s(rows, cols, data).unwrap()
    }

    fn check_hnf(m: &IntMatrix) {
        let (h, u) = hnf(m);
        assert!(u.is_unimodular(), "U not unimodular for {m}");
        assert_eq!(u.mul(m).unwrap(), h);
        assert!(is_hermite_normal_form(&h), "{h} is not in HNF");
    }

    fn check_snf(m: &IntMatrix) -> IntMatrix {
        let (s, u, v) = snf(m);
        assert!(u.is_unimodular() && v.is_unimodular());
        assert_eq!(u.mul(m).unwrap().mul(&v).unwrap(), s);
        let k = s.rows().min(s.cols());
        for i in 0..s.rows() {
            for j in 0..s.cols() {
                if i != j {
                    assert!(s.get(i, j).is_zero());
                }
            }
        }
        for i in 0..k {
            assert!(!s.get(i, i).is_negative());
            if i + 1 < k && !s.get(i, i).is_zero() {
                assert!((s.get(i + 1, i + 1) % s.get(i, i)).is_zero());
            }
            if s.get(i, i).is_zero() {
                assert!((i..k).all(|j| s.get(j, j).is_zero()));
            }
        }
        s
    }

    #[test]
    fn hnf_identity_and_diagonal() {
        let id = IntMatrix::identity(3);
        assert_eq!(hnf(&id), (id.clone(), id.clone()));
        let d = mat(2, 2, &[2, 0, 0, 3]);
        assert_eq!(hnf(&d), (d.clone(), IntMatrix::identity(2)));
    }

    #[test]
    fn hnf_known_value() {
        // det = -2 and the first column has gcd 2, so the pivots are 2 and 1
        let (h, _) = hnf(&mat(2, 2, &[2, 3, 4, 5]));
        assert_eq!(h, mat(2, 2, &[2, 0, 0, 1]));
        let (h, _) = hnf(&mat(2, 3, &[0, 0, 4, 0, 2, 6]));
        assert_eq!(h, mat(2, 3, &[0, 2, 2, 0, 0, 4]));
    }

    #[test]
    fn hnf_satisfies_predicate_on_rectangular_and_singular() {
        for m in [
            mat(3, 3, &[1, 2, 3, 4, 5, 6, 7, 8, 9]),
            mat(2, 4, &[0, -3, 6, 1, 0, 2, -4, 5]),
            mat(4, 2, &[5, -2, -3, 4, 0, 0, 7, 7]),
            IntMatrix::zero(2, 3),
            mat(3, 3, &[-5, 4, 0, 3, -2, 5, -1, 0, -4]),
        ] {
            check_hnf(&m);
        }
    }

    #[test]
    fn snf_examples() {
        assert_eq!(check_snf(&IntMatrix::identity(2)), IntMatrix::identity(2));
        // 1x1 minors gcd = 1, 2x2 minor = 6: invariant factors 1, 6
        assert_eq!(
            check_snf(&mat(2, 2, &[2, 0, 0, 3])),
            mat(2, 2, &[1, 0, 0, 6])
        );
        assert_eq!(check_snf(&IntMatrix::zero(2, 3)), IntMatrix::zero(2, 3));
        assert_eq!(
            check_snf(&mat(3, 3, &[2, 4, 4, -6, 6, 12, 10, -4, -16])),
            mat(3, 3, &[2, 0, 0, 0, 6, 0, 0, 0, 12])
        );
        check_snf(&mat(2, 3, &[1, 2, 3, 4, 5, 6]));
        check_snf(&mat(3, 2, &[0, 4, 6, 0, 0, 10]));
    }

    #[test]
    fn predicate_rejects_bad_forms() {
        assert!(!is_hermite_normal_form(&mat(2, 2, &[-1, 0, 0, 1])));
        assert!(!is_hermite_normal_form(&mat(2, 2, &[2, 3, 0, 3])));
        assert!(!is_hermite_normal_form(&mat(2, 2, &[0, 0, 1, 0])));
        assert!(!is_hermite_normal_form(&mat(2, 2, &[1, 0, 1, 0])));
        assert!(is_hermite_normal_form(&mat(2, 2, &[2, 1, 0, 3])));
    }

    #[test]
    fn apply_and_projection() {
        let p = IntMatrix::coordinate_projection(3, 2);
        let v = LatticeVector::from_i64s(&[4, -1, 7]);
        assert_eq!(p.apply(&v).unwrap(), LatticeVector::from_i64s(&[4, -1]));
        assert!(p.apply(&LatticeVector::zero(2)).is_err());
    }
}
