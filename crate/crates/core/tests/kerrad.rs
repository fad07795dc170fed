use std::sync::Arc;

use proptest::prelude::*;

use diffrad::algebra::{nilradical, Algebra, Element};
use diffrad::derivation::Derivation;
use diffrad::exactmath::{Field, Subspace, UniPoly};
use diffrad::kerrad::{
    ann, ann_left, exppoly_kernel, factor_closed_model, is_zero_divisor, ker_op, kernel_power_radical_check,
    ms_violation_search, ms_witness_verify, radical_annihilator_check, radical_member, radical_member_exppoly,
    radical_threshold, MsWitnessOutcome, Verdict,
};
use diffrad::report::Status;
use diffrad::sample::Sampler;
use diffrad::weylop::{DiffOperator, OperatorPolynomial};
use diffrad::Error;

#[test]
fn radical_examples() {
    let q = Field::Rational;
    let a = Algebra::truncated(q, &["x"], &[3]).unwrap();
    let x = a.var("x").unwrap();
    // x is nilpotent: in the radical of the zero subspace.
    let zero = Subspace::zero(q, 3);
    assert!(radical_member(&x, &zero).unwrap().in_radical());
    assert_eq!(radical_threshold(&x, &zero).unwrap(), Some(3));
    // 1 + x has powers spanning everything.
    let line = a.span(&[a.one()]).unwrap();
    assert!(!radical_member(&(&a.one() + &x), &line).unwrap().in_radical());
    assert_eq!(radical_threshold(&(&a.one() + &x), &line).unwrap(), None);
    // Wrong ambient dimension is rejected.
    assert!(matches!(radical_member(&x, &Subspace::zero(q, 2)), Err(Error::DimensionMismatch { .. })));
    let e = Algebra::exp_poly();
    assert!(matches!(radical_member(&e.one(), &zero), Err(Error::InfiniteDimensional)));
}

#[test]
fn annihilators() {
    let a = Algebra::truncated(Field::Rational, &["x", "y"], &[2, 2]).unwrap();
    let x = a.var("x").unwrap();
    assert_eq!(ann(&x).unwrap(), a.span(&[x.clone(), a.parse("x*y").unwrap()]).unwrap());
    assert!(is_zero_divisor(&x).unwrap());
    assert!(!is_zero_divisor(&a.parse("1 + x").unwrap()).unwrap());
    let m = Algebra::matrices(Field::Rational, 2).unwrap();
    let e12 = m.parse("E12").unwrap();
    // E12 b = 0 iff the second row of b is zero.
    assert_eq!(ann_left(&e12).unwrap().dim(), 2);
}

#[test]
fn mathieu_witnesses() {
    let m = Algebra::matrices(Field::Rational, 2).unwrap();
    let e11 = m.parse("one - E22").unwrap();
    let v = m.span(&[e11.clone()]).unwrap();
    let w = ms_witness_verify(&v, &e11, &m.parse("E21").unwrap(), &m.one(), None).unwrap();
    assert_eq!(w.outcome, MsWitnessOutcome::ViolationConfirmed);
    assert!(w.premise_holds);
    // A random search finds some violation for the same subspace.
    let mut s = Sampler::new(5);
    assert!(ms_violation_search(&v, &m, &mut s, 50).unwrap().is_some());
    // Ideals are Mathieu subspaces: no violation for the nilradical of a commutative algebra.
    let a = Algebra::truncated(Field::Rational, &["x", "y"], &[3, 2]).unwrap();
    let nil = nilradical(&a).unwrap();
    assert!(ms_violation_search(&nil, &a, &mut s, 50).unwrap().is_none());
}

#[test]
fn factor_closed_model_keeps_witness_words() {
    let a = Algebra::noncommutative(Field::Rational, &["X", "Y"], &["YY"], None).unwrap();
    let f = a.parse("X*Y").unwrap();
    let x = a.var("X").unwrap();
    let words: Vec<Element> = (1..=3).flat_map(|m| [f.pow(m), &x * &f.pow(m)]).collect();
    let model = factor_closed_model(&a, &words).unwrap();
    for w in &words {
        assert_eq!(model.project(w).to_string(), w.to_string());
    }
    // YX is a factor of XYXY and XX of XXY, but XXX occurs nowhere.
    assert!(!model.parse("Y*X").unwrap().is_zero());
    assert!(!model.parse("X*X").unwrap().is_zero());
    assert!(model.parse("X*X*X").unwrap().is_zero());
    assert!(model.dim().unwrap() < 30);
    assert!(factor_closed_model(&Algebra::truncated(Field::Rational, &["x"], &[2]).unwrap(), &[]).is_err());
}

#[test]
fn exponential_kernels() {
    let e = Algebra::exp_poly();
    let p = OperatorPolynomial::univariate(&e, &UniPoly::from_ints(Field::Rational, &[-6, 11, -6, 1]));
    let k = exppoly_kernel(&p).unwrap();
    assert_eq!(k.iter().map(|b| b.to_string()).collect::<Vec<_>>(), ["E(1)", "E(2)", "E(3)"]);
    // e^x has e^{2x}, e^{3x} in the kernel but not e^{4x}.
    let (v, m0) = radical_member_exppoly(&e.parse("E(1)").unwrap(), &k).unwrap();
    assert_eq!((v, m0), (Verdict::NotInRadical, Some(4)));
}

#[test]
fn kernel_power_implication_needs_reduced() {
    let a = Algebra::truncated(Field::Rational, &["x"], &[3]).unwrap();
    let d = Derivation::euler(&a, &[1]).unwrap();
    assert!(matches!(kernel_power_radical_check(&d, &a.var("x").unwrap(), 2), Err(Error::NotReduced)));
    let e = Algebra::exp_poly();
    let dx = Derivation::d_dx(&e).unwrap();
    // D^2 kills x and x^2 is not killed: premise fails.
    let c = kernel_power_radical_check(&dx, &e.parse("x").unwrap(), 2).unwrap();
    assert_eq!(c.status, Status::HypothesisNotMet);
}

/// Brute force over the first `2d + 1` powers.
fn eventually_in(a: &Element, v: &Subspace) -> bool {
    let alg = a.algebra();
    let d = alg.dim().unwrap();
    let inside: Vec<bool> = (1..=2 * d + 1).map(|m| v.contains(&alg.coords(&a.pow(m as u32)).unwrap()).unwrap()).collect();
    (1..=d + 1).any(|n| inside[n - 1..=n - 1 + d].iter().all(|&b| b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn radical_member_matches_power_scan(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let alg = s.commutative_algebra(6);
        let a = s.element(&alg);
        let v = s.subspace(&alg, 4);
        let d = radical_member(&a, &v).unwrap();
        prop_assert_eq!(d.in_radical(), eventually_in(&a, &v));
        // S∞ is invariant under multiplication by a.
        let moved = d.stable_span.image_under(&alg.left_mult_matrix(&a).unwrap()).unwrap();
        prop_assert!(moved.is_subset(&d.stable_span).unwrap());
    }

    #[test]
    fn radical_annihilator_consequences(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let alg = s.commutative_algebra(8);
        let ders = Arc::new(vec![s.any_derivation(&alg).unwrap()]);
        let c: Vec<i64> = (0..3).map(|_| s.small_int()).collect();
        let p = OperatorPolynomial::univariate(&alg, &UniPoly::from_ints(Field::Rational, &c));
        prop_assume!(p.degree().unwrap_or(0) >= 1);
        let r = radical_annihilator_check(&p, ders.clone(), &mut s, 6).unwrap();
        prop_assert!(r.count(Status::Fail) == 0, "{:?}", r);
        // Nilpotents are always in the radical of Ker P(D).
        let v = ker_op(&DiffOperator::from_polynomial(&p, ders).unwrap()).unwrap();
        let n = s.element_of(&alg, &nilradical(&alg).unwrap());
        prop_assert_eq!(radical_member(&n, &v).unwrap().verdict, Verdict::InRadical);
    }
}
