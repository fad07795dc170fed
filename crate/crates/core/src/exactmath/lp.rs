//! Exact simplex for the small linear programs behind extremality tests.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    /// Optimal value and an optimal vertex `t`.
    Optimal { value: BigRational, point: Vec<BigRational> },
    Infeasible,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&BigRational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            LpOutcome::Infeasible => None,
        }
    }
}

/// Maximizes `Σ t_i` subject to `Σ t_i·points_i = target`, `t ≥ 0`, `Σ t_i ≤ 1`.
pub fn lp_feasible_max(points: &[Vec<Scalar>], target: &[Scalar]) -> Result<LpOutcome> {
    let n = target.len();
    let to_q = |s: &Scalar| {
        s.as_rational()
            .cloned()
            .ok_or_else(|| Error::FieldUnsupported(s.field().to_string()))
    };
    let pts = points
        .iter()
        .map(|p| {
            if p.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: p.len(),
                });
            }
            p.iter().map(to_q).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let b = target.iter().map(to_q).collect::<Result<Vec<_>>>()?;
    Ok(maximize_sum(&pts, &b))
}

/// Same program over raw rationals.
pub fn maximize_sum(points: &[Vec<BigRational>], target: &[BigRational]) -> LpOutcome {
    let k = points.len();
    let n = target.len();
    // Rows: n equalities plus Σt + s = 1. Columns: t (k), slack s, then one
    // artificial per row.
    let m = n + 1;
    let cols = k + 1 + m;
    let mut a = vec![vec![BigRational::zero(); cols + 1]; m];
    for i in 0..n {
        for (j, p) in points.iter().enumerate() {
            a[i][j] = p[i].clone();
        }
        a[i][cols] = target[i].clone();
    }
    for j in 0..k {
        a[n][j] = BigRational::one();
    }
    a[n][k] = BigRational::one();
    a[n][cols] = BigRational::one();
    for row in a.iter_mut() {
        if row[cols].is_negative() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
        }
    }
    for (i, row) in a.iter_mut().enumerate() {
        row[k + 1 + i] = BigRational::one();
    }
    let mut basis: Vec<usize> = (0..m).map(|i| k + 1 + i).collect();

    // Phase one: minimize the sum of artificials.
    let mut phase1 = vec![BigRational::zero(); cols];
    for c in phase1.iter_mut().skip(k + 1) {
        *c = -BigRational::one();
    }
    run_simplex(&mut a, &mut basis, &phase1, cols);
    let artificial_sum: BigRational = basis
        .iter()
        .zip(&a)
        .filter(|(&b, _)| b > k)
        .map(|(_, row)| row[cols].clone())
        .sum();
    if !artificial_sum.is_zero() {
        return LpOutcome::Infeasible;
    }
    // Drive zero-valued artificials out of the basis where possible.
    for i in 0..m {
        if basis[i] > k {
            if let Some(j) = (0..=k).find(|&j| !a[i][j].is_zero()) {
                pivot(&mut a, &mut basis, i, j, cols);
            }
        }
    }

    // Phase two: maximize Σt with artificials barred from entering.
    let mut phase2 = vec![BigRational::zero(); cols];
    for c in phase2.iter_mut().take(k) {
        *c = BigRational::one();
    }
    run_simplex(&mut a, &mut basis, &phase2, k + 1);
    let mut point = vec![BigRational::zero(); k];
    for (row, &b) in a.iter().zip(&basis) {
        if b < k {
            point[b] = row[cols].clone();
        }
    }
    let value = point.iter().sum();
    LpOutcome::Optimal { value, point }
}

// Maximizes `obj · x` using Bland's rule; only columns `< allowed` may enter.
// The program is bounded because every column appears in the Σt + s = 1 row
// or is an artificial, so no unboundedness branch is needed.
fn run_simplex(a: &mut [Vec<BigRational>], basis: &mut [usize], obj: &[BigRational], allowed: usize) {
    let cols = obj.len();
    loop {
        let reduced = |j: usize| -> BigRational {
            let mut r = obj[j].clone();
            for (row, &b) in a.iter().zip(basis.iter()) {
                if !row[j].is_zero() && !obj[b].is_zero() {
                    r -= &obj[b] * &row[j];
                }
            }
            r
        };
        let Some(enter) = (0..allowed).find(|&j| !basis.contains(&j) && reduced(j).is_positive()) else {
            return;
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for (i, row) in a.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[cols] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((row, _)) = leave else {
            return;
        };
        pivot(a, basis, row, enter, cols);
    }
}

fn pivot(a: &mut [Vec<BigRational>], basis: &mut [usize], r: usize, c: usize, cols: usize) {
    let inv = a[r][c].recip();
    for x in a[r].iter_mut() {
        *x *= &inv;
    }
    let pivot_row = a[r].clone();
    for (i, row) in a.iter_mut().enumerate() {
        if i == r || row[c].is_zero() {
            continue;
        }
        let f = row[c].clone();
        for j in 0..=cols {
            if !pivot_row[j].is_zero() {
                row[j] -= &f * &pivot_row[j];
            }
        }
    }
    basis[r] = c;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::scalar::Field;

    fn pts(rows: &[&[i64]]) -> Vec<Vec<Scalar>> {
        rows.iter().map(|r| r.iter().map(|&v| Field::Rational.int(v)).collect()).collect()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn sum_exceeding_one_is_infeasible() {
        let out = lp_feasible_max(&pts(&[&[1, 0], &[0, 1]]), &pts(&[&[1, 1]])[0]).unwrap();
        assert_eq!(out, LpOutcome::Infeasible);
    }

    #[test]
    fn half_multiple() {
        let out = lp_feasible_max(&pts(&[&[2, 0]]), &pts(&[&[1, 0]])[0]).unwrap();
        assert_eq!(out.value(), Some(&q(1, 2)));
    }

    #[test]
    fn zero_target() {
        let out = lp_feasible_max(&pts(&[&[1, 0]]), &pts(&[&[0, 0]])[0]).unwrap();
        assert_eq!(out.value(), Some(&q(0, 1)));
    }

    #[test]
    fn maximizes_over_a_segment() {
        // t1(1,0) + t2(-1,0) = 0 admits t1 = t2 up to the Σ ≤ 1 cap.
        let out = lp_feasible_max(&pts(&[&[1, 0], &[-1, 0]]), &pts(&[&[0, 0]])[0]).unwrap();
        assert_eq!(out.value(), Some(&q(1, 1)));
    }

    #[test]
    fn negative_targets() {
        let out = lp_feasible_max(&pts(&[&[-2, 1]]), &pts(&[&[-1, 0]])[0]).unwrap();
        assert_eq!(out, LpOutcome::Infeasible);
        let out = lp_feasible_max(&pts(&[&[-3, 0], &[0, 3]]), &pts(&[&[-1, 1]])[0]).unwrap();
        assert_eq!(out.value(), Some(&q(2, 3)));
    }

    #[test]
    fn prime_field_rejected() {
        let f = Field::prime(5).unwrap();
        let p = vec![vec![f.int(1)]];
        assert!(matches!(lp_feasible_max(&p, &[f.int(1)]), Err(Error::FieldUnsupported(_))));
    }
}
