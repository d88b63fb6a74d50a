use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ToricDivisor;
use crate::lattice::{snf, Cone, Fan, IntMatrix, LatticeVector};
use crate::{Error, Result};

/// Local linear data of a Q-Cartier toric divisor: for each maximal cone `σ`
/// a vector `m_σ` with `<m_σ, u_i> = d_i` for the rays `u_i` of `σ`, and the
/// least positive `q` such that `q·D` is Cartier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartierData {
    pieces: Vec<(Cone, Vec<BigRational>)>,
    index: BigInt,
}

impl CartierData {
    pub fn pieces(&self) -> &[(Cone, Vec<BigRational>)] {
        &self.pieces
    }

    pub fn m_for(&self, cone: &Cone) -> Option<&[BigRational]> {
        self.pieces
            .iter()
            .find(|(c, _)| c == cone)
            .map(|(_, m)| m.as_slice())
    }

    /// Least positive integer `q` with `q·D` Cartier.
    pub fn index(&self) -> &BigInt {
        &self.index
    }

    pub fn is_cartier(&self) -> bool {
        self.index.is_one()
    }

    /// `<m_σ, v>` for a maximal cone `σ` containing `v`; this is `-φ_D(v)`.
    /// `None` if `v` is outside the support.
    pub fn evaluate(&self, v: &LatticeVector) -> Result<Option<BigRational>> {
        for (cone, m) in &self.pieces {
            if cone.contains(v)? {
                return Ok(Some(v.dot_rational(m)));
            }
        }
        Ok(None)
    }

    /// The support function `φ_D(v) = -<m_σ, v>`.
    pub fn support_function(&self, v: &LatticeVector) -> Result<Option<BigRational>> {
        Ok(self.evaluate(v)?.map(|x| -x))
    }
}

/// Solves `<m, u_i> = d_i` on every maximal cone through the Smith normal form
/// of the ray matrix. The solution exists over `Q` iff the divisor is
/// Q-Cartier on the cone; the SNF also gives the exact Cartier index.
pub fn cartier_data(fan: &Fan, divisor: &ToricDivisor) -> Result<CartierData> {
    let n = fan.ambient_dim();
    let mut pieces = Vec::with_capacity(fan.maximal_cones().len());
    let mut index = BigInt::one();
    for sigma in fan.maximal_cones() {
        let (m, q) = solve_on_cone(n, sigma, &divisor.restrict_to(sigma)).ok_or_else(|| {
            Error::NotQCartier {
                cone: sigma.clone(),
            }
        })?;
        index = index.lcm(&q);
        pieces.push((sigma.clone(), m));
    }
    Ok(CartierData { pieces, index })
}

fn solve_on_cone(n: usize, sigma: &Cone, d: &[BigRational]) -> Option<(Vec<BigRational>, BigInt)> {
    let k = sigma.generators().len();
    if k == 0 {
        return Some((vec![BigRational::zero(); n], BigInt::one()));
    }
    let a = IntMatrix::from_rows(n, sigma.generators()).expect("rays match ambient dimension");
    let denom = d.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let b = LatticeVector::new(d.iter().map(|x| (x * &denom).to_integer()).collect());
    let (s, u, v) = snf(&a);
    let c = u.apply(&b).expect("U is k x k");
    let rank = (0..k.min(n))
        .take_while(|&i| !s.get(i, i).is_zero())
        .count();
    if c.entries()[rank..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut y = vec![BigRational::zero(); n];
    let mut q = BigInt::one();
    for i in 0..rank {
        y[i] = BigRational::new(c.entries()[i].clone(), s.get(i, i) * &denom);
        q = q.lcm(y[i].denom());
    }
    let m = (0..n).map(|r| v.row(r).dot_rational(&y)).collect();
    Some((m, q))
}

/// Pulls back a Q-Cartier divisor along a lattice map `source -> target`
/// (given as a `target_dim x source_dim` matrix) that sends every cone of the
/// source fan into a cone of the target fan.
pub fn pullback_divisor(
    map: &IntMatrix,
    source: &Fan,
    target: &Fan,
    divisor: &ToricDivisor,
) -> Result<ToricDivisor> {
    if map.cols() != source.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: source.ambient_dim(),
            found: map.cols(),
        });
    }
    if map.rows() != target.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: target.ambient_dim(),
            found: map.rows(),
        });
    }
    let data = cartier_data(target, divisor)?;
    let mut coefficients = std::collections::BTreeMap::new();
    for sigma in source.maximal_cones() {
        let images = sigma
            .generators()
            .iter()
            .map(|u| map.apply(u))
            .collect::<Result<Vec<_>>>()?;
        let mut found = None;
        for (tau, m) in data.pieces() {
            let mut inside = true;
            for w in &images {
                if !tau.contains(w)? {
                    inside = false;
                    break;
                }
            }
            if inside {
                found = Some(m);
                break;
            }
        }
        let m = found.ok_or_else(|| Error::NotFanCompatible {
            cone: sigma.clone(),
        })?;
        for (u, w) in sigma.generators().iter().zip(&images) {
            coefficients.insert(u.clone(), w.dot_rational(m));
        }
    }
    Ok(ToricDivisor::from_map(coefficients))
}
