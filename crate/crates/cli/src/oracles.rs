//! Reference computations that share no code path with the library routines
//! they are compared against.

use itertools::Itertools;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use toric_towers::lattice::rational::{self, Q};
use toric_towers::tower::{LocalModelDescriptor, Move};
use toric_towers::{BigInt, Cone, IntMatrix, LatticeVector};

/// Row-style Hermite normal form by repeated division with remainder: clear
/// each column below the pivot, make the pivot positive, reduce the entries
/// above it into `[0, pivot)`.
pub fn elementary_hnf(m: &IntMatrix) -> IntMatrix {
    let mut rows: Vec<Vec<BigInt>> = (0..m.rows()).map(|r| m.row(r).into_entries()).collect();
    let mut r = 0;
    for c in 0..m.cols() {
        loop {
            let nonzero: Vec<usize> = (r..rows.len()).filter(|&i| !rows[i][c].is_zero()).collect();
            if nonzero.len() <= 1 {
                if let Some(&i) = nonzero.first() {
                    rows.swap(r, i);
                    if rows[r][c].is_negative() {
                        rows[r].iter_mut().for_each(|x| *x = -x.clone());
                    }
                    for above in 0..r {
                        let q = rows[above][c].div_floor(&rows[r][c]);
                        let pivot = rows[r].clone();
                        rows[above]
                            .iter_mut()
                            .zip(&pivot)
                            .for_each(|(x, y)| *x -= &q * y);
                    }
                    r += 1;
                }
                break;
            }
            let small = *nonzero.iter().min_by_key(|&&i| rows[i][c].abs()).unwrap();
            let pivot = rows[small].clone();
            for &i in nonzero.iter().filter(|&&i| i != small) {
                let q = &rows[i][c] / &pivot[c];
                rows[i]
                    .iter_mut()
                    .zip(&pivot)
                    .for_each(|(x, y)| *x -= &q * y);
            }
        }
    }
    IntMatrix::new(m.rows(), m.cols(), rows.concat()).expect("shape preserved")
}

/// Whether `v` is a non-negative combination of `gens`, by Fourier-Motzkin
/// elimination of the multipliers from `G λ = v, λ >= 0`.
pub fn fourier_motzkin_contains(gens: &[LatticeVector], v: &LatticeVector) -> bool {
    let k = gens.len();
    // rows (a, b) mean a·λ <= b
    let mut rows: Vec<(Vec<Q>, Q)> = Vec::new();
    for i in 0..v.dim() {
        let a: Vec<Q> = gens
            .iter()
            .map(|g| Q::from_integer(g.entries()[i].clone()))
            .collect();
        let b = Q::from_integer(v.entries()[i].clone());
        rows.push((a.iter().map(|x| -x).collect(), -b.clone()));
        rows.push((a, b));
    }
    for j in 0..k {
        let mut a = vec![Q::zero(); k];
        a[j] = -Q::one();
        rows.push((a, Q::zero()));
    }
    for j in 0..k {
        let (mut pos, mut neg, mut rest) = (vec![], vec![], vec![]);
        for (a, b) in rows {
            if a[j].is_positive() {
                pos.push((a, b));
            } else if a[j].is_negative() {
                neg.push((a, b));
            } else {
                rest.push((a, b));
            }
        }
        for (ap, bp) in &pos {
            for (an, bn) in &neg {
                let (sp, sn) = (ap[j].clone(), -an[j].clone());
                let a: Vec<Q> = ap.iter().zip(an).map(|(x, y)| x / &sp + y / &sn).collect();
                let row = (a, bp / &sp + bn / &sn);
                if !rest.contains(&row) {
                    rest.push(row);
                }
            }
        }
        rows = rest;
    }
    rows.iter().all(|(_, b)| !b.is_negative())
}

/// `d_k` = gcd of all `k x k` minors, for `k = 1..=min(rows, cols)`.
pub fn determinantal_divisors(m: &IntMatrix) -> Vec<BigInt> {
    let kmax = m.rows().min(m.cols());
    (1..=kmax)
        .map(|k| {
            let mut g = BigInt::zero();
            for rows in (0..m.rows()).combinations(k) {
                for cols in (0..m.cols()).combinations(k) {
                    let minor: Vec<Vec<Q>> = rows
                        .iter()
                        .map(|&r| {
                            cols.iter()
                                .map(|&c| Q::from_integer(m.get(r, c).clone()))
                                .collect()
                        })
                        .collect();
                    g = g.gcd(&rational::determinant(&minor).to_integer());
                }
            }
            g
        })
        .collect()
}

/// `Σ α_i (1 - b_i)` where `e = Σ α_i u_i` is solved by Cramer's rule. `None`
/// when `e` is not in the cone spanned by the (independent) `rays`.
pub fn cramer_log_discrepancy(rays: &[LatticeVector], b: &[Q], e: &LatticeVector) -> Option<Q> {
    let n = rays.len();
    let column_matrix = |replace: Option<usize>| -> Vec<Vec<Q>> {
        (0..n)
            .map(|row| {
                (0..n)
                    .map(|col| {
                        let src = if replace == Some(col) { e } else { &rays[col] };
                        Q::from_integer(src.entries()[row].clone())
                    })
                    .collect()
            })
            .collect()
    };
    let det = rational::determinant(&column_matrix(None));
    let alphas: Vec<Q> = (0..n)
        .map(|i| rational::determinant(&column_matrix(Some(i))) / &det)
        .collect();
    if alphas.iter().any(|a| a.is_negative()) {
        return None;
    }
    Some(
        alphas
            .iter()
            .zip(b)
            .map(|(a, bi)| a * (Q::one() - bi))
            .fold(Q::zero(), |s, x| s + x),
    )
}

/// Log discrepancy over `(A^n, 0)` of the divisor `{u_j = 0}` of the monomial
/// chart `x_i = Π_k u_k^{A_ik}`, read off the Jacobian determinant: it is
/// `ord_{u_j}(det ∂x/∂u) + 1`.
pub fn chart_log_discrepancy(chart: &IntMatrix, j: usize) -> BigInt {
    let n = chart.rows();
    // ∂x_i/∂u_k = A_ik · u^{row_i - e_k}
    let entry = |i: usize, k: usize| -> (BigInt, Vec<BigInt>) {
        let mut exp = chart.row(i).into_entries();
        exp[k] -= 1;
        (chart.get(i, k).clone(), exp)
    };
    let mut order: Option<BigInt> = None;
    let mut total = BigInt::zero();
    for perm in (0..n).permutations(n) {
        let sign = if inversions(&perm).is_multiple_of(2) { 1 } else { -1 };
        let mut coeff = BigInt::from(sign);
        let mut exp = vec![BigInt::zero(); n];
        for (i, &k) in perm.iter().enumerate() {
            let (c, e) = entry(i, k);
            coeff *= c;
            exp.iter_mut().zip(e).for_each(|(x, y)| *x += y);
        }
        if coeff.is_zero() {
            continue;
        }
        // every surviving term of a monomial Jacobian is the same monomial
        total += &coeff;
        order = Some(exp[j].clone());
    }
    assert!(!total.is_zero(), "chart is not birational");
    order.expect("non-zero Jacobian") + 1
}

fn inversions(perm: &[usize]) -> usize {
    perm.iter()
        .enumerate()
        .map(|(i, a)| perm[i + 1..].iter().filter(|b| *b < a).count())
        .sum()
}

/// A polynomial in the fibre coordinates `(α, α')` with monomial coefficients
/// on the base: terms `c · α^i α'^j · χ^u`.
#[derive(Clone, Debug)]
struct FibrePoly {
    terms: Vec<(BigInt, [u32; 2], LatticeVector)>,
}

impl FibrePoly {
    fn derivative(&self, var: usize) -> FibrePoly {
        let terms = self
            .terms
            .iter()
            .filter(|(_, e, _)| e[var] > 0)
            .map(|(c, e, u)| {
                let mut e2 = *e;
                e2[var] -= 1;
                (c * BigInt::from(e[var]), e2, u.clone())
            })
            .collect();
        FibrePoly { terms }
    }

    /// Whether the polynomial vanishes at a general point of the orbit whose
    /// cone has `w` in its relative interior; `exponent` maps a term to its
    /// character on the level lattice.
    fn vanishes_on_orbit(
        &self,
        w: &LatticeVector,
        exponent: impl Fn(&[u32; 2], &LatticeVector) -> LatticeVector,
    ) -> bool {
        let mut surviving: Vec<(LatticeVector, BigInt)> = Vec::new();
        for (c, e, u) in &self.terms {
            let chi = exponent(e, u);
            if chi.dot(w).is_zero() {
                match surviving.iter_mut().find(|(x, _)| *x == chi) {
                    Some((_, acc)) => *acc += c,
                    None => surviving.push((chi, c.clone())),
                }
            }
        }
        surviving.iter().all(|(_, c)| c.is_zero())
    }
}

/// Smooth/node classification of the orbit of `cone` (a cone of the level
/// produced by `step`) from the Jacobian of the fibre equation.
///
/// For a node move the fibre is `Φ = α α' - λ`; the orbit is a node when both
/// `∂Φ/∂α` and `∂Φ/∂α'` vanish on it. For a product move the fibre coordinate
/// is `α` and the orbit is on its zero section when `α` vanishes there.
pub fn jacobian_local_model(step: &Move, cone: &Cone) -> LocalModelDescriptor {
    let n = cone.ambient_dim();
    let w = cone
        .generators()
        .iter()
        .fold(LatticeVector::zero(n), |acc, r| &acc + r);
    let e_new = LatticeVector::unit(n, n - 1);
    match step.character() {
        None => {
            if e_new.dot(&w).is_positive() {
                LocalModelDescriptor::SmoothOnSection
            } else {
                LocalModelDescriptor::SmoothPlain
            }
        }
        Some(lambda) => {
            let m = lambda.exponents().clone();
            let alpha_prime = m.extend(&[-BigInt::one()]);
            let phi = FibrePoly {
                terms: vec![
                    (BigInt::one(), [1, 1], LatticeVector::zero(n - 1)),
                    (-BigInt::one(), [0, 0], m.clone()),
                ],
            };
            let exponent = |e: &[u32; 2], u: &LatticeVector| {
                let mut chi = u.extend(&[BigInt::zero()]);
                chi = &chi + &e_new.scale(&BigInt::from(e[0]));
                &chi + &alpha_prime.scale(&BigInt::from(e[1]))
            };
            let singular = (0..2).all(|var| phi.derivative(var).vanishes_on_orbit(&w, exponent));
            if singular {
                LocalModelDescriptor::Node { lambda }
            } else {
                LocalModelDescriptor::SmoothPlain
            }
        }
    }
}

/// `Σ_j c_j n_j`.
pub fn base_change_exponent(t_exponents: &[BigInt], orders: &[BigInt]) -> BigInt {
    let mut s = BigInt::zero();
    for j in 0..t_exponents.len() {
        s += &t_exponents[j] * &orders[j];
    }
    s
}
