use num_rational::BigRational;
use proptest::prelude::*;

use diffrad::exactmath::{lp_feasible_max, LpOutcome, Field, Matrix, Scalar, Subspace, UniPoly};
use diffrad::Error;

fn ints(rows: &[&[i64]]) -> Matrix {
    Matrix::from_ints(Field::Rational, rows)
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Leibniz expansion over permutations; only for tiny matrices.
fn permutation_det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = 0;
    loop {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        total += sign * (0..n).map(|i| m[i][perm[i]]).product::<i64>();
        // Next permutation in lexicographic order.
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            return total;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
}

fn as_matrix(rows: &[Vec<i64>]) -> Matrix {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    ints(&refs)
}

fn square(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-4i64..=4, n), n))
}

#[test]
fn rref_examples() {
    let r = ints(&[&[1, 1], &[1, 2]]).rref();
    assert_eq!(r.rank, 2);
    assert_eq!(r.matrix, Matrix::identity(Field::Rational, 2));
    assert_eq!(ints(&[&[0, 0], &[0, 0]]).rank(), 0);
    let r = ints(&[&[1, 2], &[2, 4]]).rref();
    assert_eq!(r.rank, 1);
    assert_eq!(r.matrix.row(0), ints(&[&[1, 2]]).row(0));
}

#[test]
fn kernel_examples() {
    assert!(Matrix::identity(Field::Rational, 3).kernel().is_zero());
    assert_eq!(Matrix::zeros(Field::Rational, 2, 3).kernel().dim(), 3);
    let k = ints(&[&[1, 2]]).kernel();
    assert_eq!(k.dim(), 1);
    let f = Field::Rational;
    // Spanned by (-2, 1), normalized so the pivot is 1.
    assert_eq!(k.basis()[0], vec![f.int(1), f.ratio(-1, 2).unwrap()]);
}

#[test]
fn prime_field_arithmetic() {
    let f = Field::prime(7).unwrap();
    assert_eq!(f.int(3).checked_mul(&f.int(5)).unwrap(), f.int(1));
    assert_eq!(f.int(3).inv().unwrap(), f.int(5));
    assert_eq!(f.int(-1), f.int(6));
    assert!(matches!(Field::prime(6), Err(Error::NotPrime(6))));
    let r = Field::Rational.int(1).checked_add(&f.int(1));
    assert!(matches!(r, Err(Error::FieldMismatch(..))));
}

#[test]
fn lp_examples() {
    let f = Field::Rational;
    let pts = |v: &[[i64; 2]]| v.iter().map(|p| vec![f.int(p[0]), f.int(p[1])]).collect::<Vec<_>>();
    // (1,0) = 1/2 (2,0): optimum 1/2.
    let out = lp_feasible_max(&pts(&[[2, 0]]), &[f.int(1), f.int(0)]).unwrap();
    assert_eq!(out.value(), Some(&q(1, 2)));
    // (1,1) needs t = (1,1), sum 2 > 1.
    let out = lp_feasible_max(&pts(&[[1, 0], [0, 1]]), &[f.int(1), f.int(1)]).unwrap();
    assert_eq!(out, LpOutcome::Infeasible);
    // The zero target is always reachable with t = 0 or better.
    let out = lp_feasible_max(&pts(&[[1, 0], [-1, 0]]), &[f.int(0), f.int(0)]).unwrap();
    assert_eq!(out.value(), Some(&q(1, 1)));
}

#[test]
fn minimal_polynomial_of_jordan_block() {
    let m = ints(&[&[2, 1, 0], &[0, 2, 0], &[0, 0, 3]]);
    let p = m.minimal_polynomial().unwrap();
    // (t-2)^2 (t-3) = t^3 - 7t^2 + 16t - 12
    assert_eq!(p, UniPoly::from_ints(Field::Rational, &[-12, 16, -7, 1]));
    assert_eq!(p.split().unwrap().len(), 2);
}

#[test]
fn subspace_operations() {
    let f = Field::Rational;
    let e = |v: [i64; 3]| v.iter().map(|&x| f.int(x)).collect::<Vec<Scalar>>();
    let a = Subspace::from_spanning(f, 3, vec![e([1, 0, 0]), e([0, 1, 0])]).unwrap();
    let b = Subspace::from_spanning(f, 3, vec![e([0, 1, 0]), e([0, 0, 1])]).unwrap();
    assert_eq!(a.intersection(&b).unwrap().dim(), 1);
    assert_eq!(a.sum(&b).unwrap(), Subspace::full(f, 3));
    assert!(a.contains(&e([2, -3, 0])).unwrap());
    assert!(!a.contains(&e([0, 0, 1])).unwrap());
}

proptest! {
    #[test]
    fn bareiss_matches_permutation_expansion(m in square(4)) {
        let det = as_matrix(&m).det_bareiss().unwrap();
        prop_assert_eq!(det, Field::Rational.int(permutation_det(&m)));
    }

    #[test]
    fn determinant_is_alternating(m in square(4), i in 0usize..4, j in 0usize..4) {
        let n = m.len();
        let (i, j) = (i % n, j % n);
        prop_assume!(i != j);
        let mut swapped = m.clone();
        swapped.swap(i, j);
        let d = as_matrix(&m).det_bareiss().unwrap();
        prop_assert_eq!(as_matrix(&swapped).det_bareiss().unwrap(), -&d);
        let mut repeated = m.clone();
        repeated[j] = repeated[i].clone();
        prop_assert!(as_matrix(&repeated).det_bareiss().unwrap().is_zero());
    }

    #[test]
    fn determinant_is_linear_in_a_row(m in square(4), extra in prop::collection::vec(-4i64..=4, 4), c in -3i64..=3) {
        let n = m.len();
        let row: Vec<i64> = extra[..n].to_vec();
        let mut combined = m.clone();
        for (x, y) in combined[0].iter_mut().zip(&row) {
            *x += c * y;
        }
        let mut replaced = m.clone();
        replaced[0] = row;
        let lhs = as_matrix(&combined).det_bareiss().unwrap();
        let rhs = &as_matrix(&m).det_bareiss().unwrap() + &(&Field::Rational.int(c) * &as_matrix(&replaced).det_bareiss().unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rank_nullity(rows in 1usize..5, cols in 1usize..5, entries in prop::collection::vec(-3i64..=3, 16)) {
        let data: Vec<Vec<i64>> = (0..rows).map(|r| entries[r * cols..(r + 1) * cols].to_vec()).collect();
        let m = as_matrix(&data);
        let k = m.kernel();
        prop_assert_eq!(m.rank() + k.dim(), cols);
        for v in k.basis() {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
        }
        let r = m.rref();
        prop_assert_eq!(r.matrix.rref().matrix, r.matrix.clone());
    }

    #[test]
    fn minimal_polynomial_annihilates(m in square(4)) {
        let mat = as_matrix(&m);
        let p = mat.minimal_polynomial().unwrap();
        let n = m.len();
        let mut acc = Matrix::zeros(Field::Rational, n, n);
        let mut power = Matrix::identity(Field::Rational, n);
        for c in p.coeffs() {
            acc = acc.add(&power.scale(c)).unwrap();
            power = power.mul(&mat).unwrap();
        }
        prop_assert!(acc.is_zero());
    }

    #[test]
    fn prime_field_inverses(p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 101]), x in 1i64..1000) {
        let f = Field::prime(p).unwrap();
        let a = f.int(x);
        prop_assume!(!a.is_zero());
        prop_assert!(a.checked_mul(&a.inv().unwrap()).unwrap().is_one());
        prop_assert_eq!(a.pow(p as u32), a);
    }

    #[test]
    fn polynomial_division(a in prop::collection::vec(-5i64..=5, 1..6), b in prop::collection::vec(-5i64..=5, 1..4)) {
        let f = Field::Rational;
        let (a, b) = (UniPoly::from_ints(f, &a), UniPoly::from_ints(f, &b));
        prop_assume!(!b.is_zero());
        let (quo, rem) = a.divrem(&b).unwrap();
        prop_assert_eq!(quo.mul(&b).add(&rem), a.clone());
        prop_assert!(rem.is_zero() || rem.degree() < b.degree());
        let g = a.gcd(&b);
        prop_assert!(a.divrem(&g).unwrap().1.is_zero());
        prop_assert!(b.divrem(&g).unwrap().1.is_zero());
    }
}
