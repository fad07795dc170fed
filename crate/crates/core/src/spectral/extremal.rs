//! Extremal points of a finite weight set.
//!
//! A point `λ ∈ S` is extremal when no `mλ` (`m ≥ 1`) equals `Σ c_i μ_i` over
//! the other points `μ_i ∈ S` with nonnegative integers `c_i`,
//! `1 ≤ Σ c_i ≤ m`. Dividing by `m` turns a witness into rationals
//! `t_i = c_i/m ≥ 0` with `Σ t_i μ_i = λ` and `0 < Σ t_i ≤ 1`; clearing
//! denominators turns such `t` back into a witness. So `λ` fails to be
//! extremal exactly when the linear program "maximize `Σ t_i` subject to
//! `Σ t_i μ_i = λ`, `t ≥ 0`, `Σ t_i ≤ 1`" has a positive optimum.

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{lp_feasible_max, LpOutcome, Scalar};

fn others<'a>(lambda: &[Scalar], set: &'a [Vec<Scalar>]) -> Result<Vec<&'a Vec<Scalar>>> {
    if !set.iter().any(|p| p == lambda) {
        return Err(Error::PointNotInSet);
    }
    Ok(set.iter().filter(|p| p.as_slice() != lambda).collect())
}

/// LP-based extremality test; also returns a witness `(m, c)` when `λ` is
/// not extremal.
pub fn extremality_certificate(lambda: &[Scalar], set: &[Vec<Scalar>]) -> Result<Option<(u64, Vec<u64>)>> {
    let rest: Vec<Vec<Scalar>> = others(lambda, set)?.into_iter().cloned().collect();
    if rest.is_empty() {
        return Ok(None);
    }
    match lp_feasible_max(&rest, lambda)? {
        LpOutcome::Infeasible => Ok(None),
        LpOutcome::Optimal { value, point } => {
            if !value.is_positive() {
                return Ok(None);
            }
            let m = point.iter().fold(num_bigint::BigInt::one(), |acc, t| acc.lcm(t.denom()));
            let c = point
                .iter()
                .map(|t| (t * BigRational::from_integer(m.clone())).to_integer().to_u64())
                .collect::<Option<Vec<u64>>>()
                .ok_or_else(|| Error::Internal("witness coefficients overflow".into()))?;
            let m = m.to_u64().ok_or_else(|| Error::Internal("witness multiple overflows".into()))?;
            Ok(Some((m, c)))
        }
    }
}

pub fn is_extremal(lambda: &[Scalar], set: &[Vec<Scalar>]) -> Result<bool> {
    Ok(extremality_certificate(lambda, set)?.is_none())
}

/// First extremal point of `set`. Every nonempty finite set has one, so
/// failure signals a bug.
pub fn find_extremal(set: &[Vec<Scalar>]) -> Result<Vec<Scalar>> {
    for p in set {
        if is_extremal(p, set)? {
            return Ok(p.clone());
        }
    }
    Err(Error::NoExtremalFound)
}

/// Direct enumeration of witnesses `mλ = Σ c_i μ_i`, `1 ≤ Σ c_i ≤ m ≤ m_max`.
/// Returns the witness with the least `m` found, or `None`.
pub fn extremal_witness_search(lambda: &[Scalar], set: &[Vec<Scalar>], m_max: u64) -> Result<Option<(u64, Vec<u64>)>> {
    let rest = others(lambda, set)?;
    let k = rest.len();
    let n = lambda.len();
    let mut best: Option<(u64, Vec<u64>)> = None;
    let mut c = vec![0u64; k];
    // Odometer over all c with Σc ≤ m_max.
    loop {
        let s: u64 = c.iter().sum();
        if s >= 1 {
            let combo: Vec<Scalar> = (0..n)
                .map(|i| {
                    rest.iter()
                        .zip(&c)
                        .fold(lambda[i].field().zero(), |acc, (p, &ci)| &acc + &p[i].scale_u64(ci))
                })
                .collect();
            for m in s..=m_max {
                if best.as_ref().is_some_and(|(bm, _)| *bm <= m) {
                    break;
                }
                if lambda.iter().zip(&combo).all(|(l, v)| l.scale_u64(m) == *v) {
                    best = Some((m, c.clone()));
                    break;
                }
            }
        }
        let mut i = 0;
        loop {
            if i == k {
                return Ok(best);
            }
            c[i] += 1;
            if c.iter().sum::<u64>() <= m_max {
                break;
            }
            c[i] = 0;
            i += 1;
        }
    }
}

/// Weights as arrays of rational strings, e.g. `[["1","0"],["1/2","3"]]`.
pub fn weights_to_json(weights: &[Vec<Scalar>]) -> serde_json::Value {
    serde_json::Value::Array(
        weights
            .iter()
            .map(|w| serde_json::Value::Array(w.iter().map(|s| serde_json::Value::String(s.to_string())).collect()))
            .collect(),
    )
}

trait ScaleU64 {
    fn scale_u64(&self, k: u64) -> Scalar;
}

impl ScaleU64 for Scalar {
    fn scale_u64(&self, k: u64) -> Scalar {
        let f = self.field();
        if k.is_zero() {
            return f.zero();
        }
        self * &f.bigint(&k.into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::Field;

    fn set(points: &[&[i64]]) -> Vec<Vec<Scalar>> {
        points.iter().map(|p| p.iter().map(|&v| Field::Rational.int(v)).collect()).collect()
    }

    #[test]
    fn unit_square_corner() {
        let s = set(&[&[1, 0], &[0, 1], &[1, 1]]);
        for p in &s {
            assert!(is_extremal(p, &s).unwrap());
        }
    }

    #[test]
    fn half_multiple() {
        let s = set(&[&[1, 0], &[2, 0]]);
        assert!(!is_extremal(&s[0], &s).unwrap());
        assert!(is_extremal(&s[1], &s).unwrap());
        assert_eq!(extremality_certificate(&s[0], &s).unwrap(), Some((2, vec![1])));
        assert_eq!(extremal_witness_search(&s[0], &s, 2).unwrap(), Some((2, vec![1])));
        assert_eq!(find_extremal(&s).unwrap(), s[1]);
    }

    #[test]
    fn singleton() {
        let s = set(&[&[3, -1]]);
        assert!(is_extremal(&s[0], &s).unwrap());
        assert_eq!(extremal_witness_search(&s[0], &s, 12).unwrap(), None);
    }

    #[test]
    fn not_in_set() {
        let s = set(&[&[1, 0]]);
        assert_eq!(is_extremal(&set(&[&[0, 1]])[0], &s), Err(Error::PointNotInSet));
    }

    #[test]
    fn zero_with_opposite_points() {
        // 0 = (1,0) + (−1,0) with Σc = 2 ≤ m = 2.
        let s = set(&[&[0, 0], &[1, 0], &[-1, 0]]);
        assert!(!is_extremal(&s[0], &s).unwrap());
        assert!(extremal_witness_search(&s[0], &s, 12).unwrap().is_some());
    }

    #[test]
    fn json_shape() {
        let w = vec![vec![Field::Rational.ratio(1, 2).unwrap(), Field::Rational.int(3)]];
        assert_eq!(weights_to_json(&w).to_string(), r#"[["1/2","3"]]"#);
    }
}
