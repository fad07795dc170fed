use std::sync::Arc;

use proptest::prelude::*;

use diffrad::algebra::Algebra;
use diffrad::derivation::Derivation;
use diffrad::exactmath::{Field, Scalar, UniPoly};
use diffrad::report::Status;
use diffrad::sample::Sampler;
use diffrad::spectral::{
    extremal_component_check, extremal_witness_search, find_extremal, generalized_eigenspaces,
    homogeneous_values_from_dilations, is_extremal, joint_grading, kernel_homogeneity_check,
    radical_in_degree_zero_check, shifted_leibniz_check,
};
use diffrad::weylop::OperatorPolynomial;
use diffrad::Error;

fn pt(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| Field::Rational.int(x)).collect()
}

fn bidegree() -> (Algebra, Arc<Vec<Derivation>>) {
    let a = Algebra::truncated(Field::Rational, &["x1", "x2"], &[2, 3]).unwrap();
    let d = vec![Derivation::euler(&a, &[1, 0]).unwrap(), Derivation::euler(&a, &[0, 1]).unwrap()];
    (a, Arc::new(d))
}

#[test]
fn extremal_examples() {
    let s = [pt(&[1, 0]), pt(&[0, 1]), pt(&[1, 1])];
    assert!(s.iter().all(|p| is_extremal(p, &s).unwrap()));
    let s = [pt(&[1, 0]), pt(&[2, 0])];
    assert!(!is_extremal(&s[0], &s).unwrap());
    assert!(is_extremal(&s[1], &s).unwrap());
    assert_eq!(extremal_witness_search(&s[0], &s, 2).unwrap(), Some((2, vec![1])));
    assert_eq!(find_extremal(&s).unwrap(), s[1]);
    assert!(is_extremal(&pt(&[3]), &[pt(&[3])]).unwrap());
    assert!(matches!(is_extremal(&pt(&[5]), &[pt(&[3])]), Err(Error::PointNotInSet)));
}

#[test]
fn bidegree_grading() {
    let (a, ders) = bidegree();
    let g = joint_grading(ders.clone()).unwrap();
    assert_eq!(g.components().len(), 6);
    assert!(g.invariants_check().unwrap().passed());
    // P = ξ1 + ξ2 − 2 has kernel A_(0,2) ⊕ A_(1,1).
    let p = OperatorPolynomial::from_ints(&a, 2, &[(vec![1, 0], 1), (vec![0, 1], 1), (vec![0, 0], -2)]).unwrap();
    assert!(kernel_homogeneity_check(&p, &g).unwrap().passed());
    let u = a.parse("x1 + x2^2").unwrap();
    let parts = g.decompose(&u).unwrap();
    assert_eq!(parts.len(), 2);
    // u is nilpotent, so both extremal components (1,0) and (0,2) pass.
    let p = OperatorPolynomial::from_ints(&a, 2, &[(vec![1, 1], 1)]).unwrap();
    let r = extremal_component_check(&p, &g, &u).unwrap();
    assert!(r.passed(), "{r:?}");
    assert!(r.checks[0].details.contains("(0, 2)") || r.checks[0].details.contains("(0,2)"), "{r:?}");
    // (1 + x1*x2)^m = 1 + m*x1*x2 and ξ1ξ2 does not kill x1*x2.
    let r = extremal_component_check(&p, &g, &a.parse("1 + x1*x2").unwrap()).unwrap();
    assert_eq!(r.checks[0].status, Status::HypothesisNotMet);
    // 1 + x1 is a member whose extremal component 1 sits at the common zero 0.
    let r = extremal_component_check(&p, &g, &a.parse("1 + x1").unwrap()).unwrap();
    assert!(r.passed(), "{r:?}");
}

#[test]
fn jordan_block_eigenspaces() {
    // x ↦ x + x^2 on Q[x]/(x^3) is triangular with eigenvalues 0, 1, 2.
    let a = Algebra::truncated(Field::Rational, &["x"], &[3]).unwrap();
    let d = Derivation::from_image_strings(&a, &[("x", "x + x^2")]).unwrap();
    let spaces = generalized_eigenspaces(&d).unwrap();
    let weights: Vec<String> = spaces.iter().map(|(l, _)| l.to_string()).collect();
    assert_eq!(weights, ["0", "1", "2"]);
    assert!(spaces.iter().all(|(_, s)| s.dim() == 1));
}

#[test]
fn degree_zero_statements() {
    let f3 = Algebra::product_of_fields(Field::Rational, 3).unwrap();
    let zero = Arc::new(vec![Derivation::zero(&f3)]);
    let mut s = Sampler::new(11);
    let p = OperatorPolynomial::from_ints(&f3, 1, &[(vec![1], 1), (vec![0], 1)]).unwrap();
    let r = radical_in_degree_zero_check(&p, zero.clone(), &mut s, 10, false).unwrap();
    assert_eq!(r.count(Status::Fail), 0, "{r:?}");
    let (a, ders) = bidegree();
    let p = OperatorPolynomial::from_ints(&a, 2, &[(vec![1, 1], 1)]).unwrap();
    assert!(matches!(radical_in_degree_zero_check(&p, ders, &mut s, 5, false), Err(Error::NotReduced)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dilations_recover_homogeneous_parts(coeffs in prop::collection::vec(-4i64..=4, 6), l in prop::collection::vec(-3i64..=3, 2)) {
        let (a, _) = bidegree();
        let idx = [[0, 0], [1, 0], [0, 1], [2, 0], [1, 1], [0, 2]];
        let terms: Vec<(Vec<u32>, i64)> = idx.iter().zip(&coeffs).map(|(i, &c)| (i.to_vec(), c)).collect();
        let p = OperatorPolynomial::from_ints(&a, 2, &terms).unwrap();
        let lambda = pt(&l);
        let got = homogeneous_values_from_dilations(&p, &lambda).unwrap();
        for (k, v) in got.iter().enumerate() {
            prop_assert_eq!(v, &p.homogeneous(k).eval_scalar(&lambda).unwrap());
        }
    }

    #[test]
    fn shifted_leibniz_on_random_derivations(seed in any::<u64>(), m in 1u32..=4) {
        let mut s = Sampler::new(seed);
        let a = if seed % 2 == 0 { s.commutative_algebra(10) } else { Algebra::matrices(Field::Rational, 2).unwrap() };
        let d = s.any_derivation(&a).unwrap();
        let f = a.field();
        let pairs = vec![(s.element(&a), s.element(&a)), (s.element(&a), s.element(&a))];
        let c = shifted_leibniz_check(&d, &f.int(s.small_int()), &f.int(s.small_int()), m, &pairs).unwrap();
        prop_assert_eq!(c.status, Status::Pass);
    }

    #[test]
    fn grading_is_multiplicative(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let a = s.commutative_algebra(10);
        let d = s.euler_derivation(&a).unwrap();
        let g = joint_grading(Arc::new(vec![d, s.euler_derivation(&a).unwrap()])).unwrap();
        prop_assert!(g.invariants_check().unwrap().passed());
    }

    #[test]
    fn lp_agrees_with_enumeration(points in prop::collection::btree_set(prop::collection::vec(-2i64..=2, 2), 1..=4)) {
        let set: Vec<Vec<Scalar>> = points.iter().map(|p| pt(p)).collect();
        for p in &set {
            let lp = is_extremal(p, &set).unwrap();
            prop_assert_eq!(lp, extremal_witness_search(p, &set, 12).unwrap().is_none());
        }
        prop_assert!(is_extremal(&find_extremal(&set).unwrap(), &set).unwrap());
    }

    #[test]
    fn scalar_polynomial_kernels_are_homogeneous(coeffs in prop::collection::vec(-2i64..=2, 3)) {
        let (a, ders) = bidegree();
        let g = joint_grading(ders).unwrap();
        let c = UniPoly::from_ints(Field::Rational, &coeffs);
        let p1 = OperatorPolynomial::univariate(&a, &c);
        // Embed the univariate polynomial in the first variable.
        let terms: Vec<(Vec<u32>, i64)> = coeffs.iter().enumerate().map(|(k, &x)| (vec![k as u32, 0], x)).collect();
        let p = OperatorPolynomial::from_ints(&a, 2, &terms).unwrap();
        prop_assert_eq!(p1.degree(), p.degree());
        prop_assert!(kernel_homogeneity_check(&p, &g).unwrap().passed());
    }
}
