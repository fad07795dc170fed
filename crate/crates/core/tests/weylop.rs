use std::sync::Arc;

use proptest::prelude::*;

use diffrad::algebra::{Algebra, Element};
use diffrad::derivation::Derivation;
use diffrad::exactmath::Field;
use diffrad::sample::Sampler;
use diffrad::weylop::{
    ad_expansion_check, ad_lowering_check, power_kernel_check, test_points, DiffOperator, OperatorPolynomial,
};

fn bidegree() -> (Algebra, Arc<Vec<Derivation>>) {
    let a = Algebra::truncated(Field::Rational, &["x1", "x2"], &[3, 3]).unwrap();
    let d = vec![Derivation::euler(&a, &[1, 0]).unwrap(), Derivation::euler(&a, &[0, 1]).unwrap()];
    (a, Arc::new(d))
}

/// `P(D)` applied term by term with repeated derivations, no operator algebra.
fn apply_by_hand(p: &OperatorPolynomial, ders: &[Derivation], x: &Element) -> Element {
    let mut acc = x.algebra().zero();
    for (alpha, c) in p.terms() {
        let mut y = x.clone();
        for (d, &k) in ders.iter().zip(alpha) {
            y = d.apply_power(&y, k).unwrap();
        }
        acc = &acc + &(c * &y);
    }
    acc
}

#[test]
fn canonical_and_word_forms_agree() {
    let (a, ders) = bidegree();
    let p = OperatorPolynomial::parse_terms(&a, 2, &[(vec![1, 1], "x1"), (vec![0, 2], "-1"), (vec![0, 0], "2 + x2")]).unwrap();
    let c = DiffOperator::from_polynomial(&p, ders.clone()).unwrap();
    let w = DiffOperator::from_polynomial_words(&p, ders.clone()).unwrap();
    assert!(c.is_canonical());
    assert!(!w.is_canonical());
    let pts = a.basis_elements().unwrap();
    assert_eq!(c.disagreement(&w, &pts).unwrap(), None);
    for x in &pts {
        assert_eq!(c.apply(x).unwrap(), apply_by_hand(&p, &ders, x));
    }
}

#[test]
fn ad_of_first_order_operator() {
    // ad_{-u} D = ℓ_{Du}.
    let (a, ders) = bidegree();
    let u = a.parse("x1 + 3*x2^2").unwrap();
    let d = DiffOperator::zero(&a, ders.clone()).unwrap().der_like(0);
    let ad = d.ad(&-&u);
    let expected = d.left_like(&ders[0].apply(&u).unwrap());
    assert_eq!(ad.disagreement(&expected, &a.basis_elements().unwrap()).unwrap(), None);
}

#[test]
fn power_kernel_linear_example() {
    let a = Algebra::truncated(Field::Rational, &["x"], &[3]).unwrap();
    let ders = Arc::new(vec![Derivation::euler(&a, &[1]).unwrap()]);
    // Euler D scales x^2 by 2, so x^2 is not in Ker D.
    let p = OperatorPolynomial::from_ints(&a, 1, &[(vec![1], 1)]).unwrap();
    let r = power_kernel_check(&p, ders.clone(), &a.parse("x^2").unwrap()).unwrap();
    assert_eq!(r.checks[0].status, diffrad::report::Status::HypothesisNotMet);
    // D - 2 kills x^2, and x^4 = 0, so both conclusions are asserted.
    let p = OperatorPolynomial::from_ints(&a, 1, &[(vec![1], 1), (vec![0], -2)]).unwrap();
    let r = power_kernel_check(&p, ders, &a.parse("x^2").unwrap()).unwrap();
    assert!(r.passed(), "{r:?}");
}

#[test]
fn noncommutative_rejected_where_needed() {
    let a = Algebra::noncommutative(Field::Rational, &["X", "Y"], &["YY"], None).unwrap();
    let ders = Arc::new(vec![Derivation::partial(&a, "X").unwrap()]);
    let p = OperatorPolynomial::from_ints(&a, 1, &[(vec![1], 1)]).unwrap();
    let u = a.var("X").unwrap();
    assert!(power_kernel_check(&p, ders.clone(), &u).is_err());
    let pts = test_points(&a, 2, &[]).unwrap();
    assert!(ad_lowering_check(&u, &p, ders, &pts).is_err());
}

fn random_operator(a: &Algebra, ders: &Arc<Vec<Derivation>>, s: &mut Sampler) -> DiffOperator {
    let mut phi = DiffOperator::zero(a, ders.clone()).unwrap();
    for _ in 0..3 {
        let mut term = phi.identity_like().left_mul(&s.element(a));
        for _ in 0..s.range(0, 2) {
            let i = s.range(0, ders.len() - 1);
            term = term.compose(&phi.der_like(i)).unwrap().left_mul(&s.element(a));
        }
        phi = phi.add(&term).unwrap();
    }
    phi
}

fn random_setting(seed: u64) -> (Algebra, Arc<Vec<Derivation>>, Sampler) {
    let mut s = Sampler::new(seed);
    let a = match seed % 3 {
        0 => Algebra::noncommutative(Field::Rational, &["X", "Y"], &["YY"], Some(3)).unwrap(),
        1 => Algebra::matrices(Field::Rational, 2).unwrap(),
        _ => s.commutative_algebra(10),
    };
    let ders = Arc::new(vec![s.any_derivation(&a).unwrap(), s.any_derivation(&a).unwrap()]);
    (a, ders, s)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn operators_are_linear(seed in any::<u64>()) {
        let (a, ders, mut s) = random_setting(seed);
        let phi = random_operator(&a, &ders, &mut s);
        let (x, y) = (s.element(&a), s.element(&a));
        let c = s.scalar(a.field());
        let lhs = phi.apply(&(&x.scale(&c) + &y)).unwrap();
        let rhs = &phi.apply(&x).unwrap().scale(&c) + &phi.apply(&y).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn composition_is_application_in_sequence(seed in any::<u64>()) {
        let (a, ders, mut s) = random_setting(seed);
        let (phi, psi) = (random_operator(&a, &ders, &mut s), random_operator(&a, &ders, &mut s));
        let x = s.element(&a);
        prop_assert_eq!(phi.compose(&psi).unwrap().apply(&x).unwrap(), phi.apply(&psi.apply(&x).unwrap()).unwrap());
    }

    #[test]
    fn ad_is_a_derivation_of_operators(seed in any::<u64>()) {
        let (a, ders, mut s) = random_setting(seed);
        let (phi, psi) = (random_operator(&a, &ders, &mut s), random_operator(&a, &ders, &mut s));
        let u = s.element(&a);
        let lhs = phi.compose(&psi).unwrap().ad(&u);
        let rhs = phi.ad(&u).compose(&psi).unwrap().add(&phi.compose(&psi.ad(&u)).unwrap()).unwrap();
        let pts = test_points(&a, 2, &[s.element(&a)]).unwrap();
        prop_assert_eq!(lhs.disagreement(&rhs, &pts).unwrap(), None);
    }

    #[test]
    fn ad_expansion_holds(seed in any::<u64>(), k in 1u32..=4) {
        let (a, ders, mut s) = random_setting(seed);
        let phi = random_operator(&a, &ders, &mut s);
        let u = s.element(&a);
        let pts = test_points(&a, 2, &[s.element(&a)]).unwrap();
        let c = ad_expansion_check(&u, &phi, k, &pts).unwrap();
        prop_assert!(!c.is_fail(), "{:?}", c);
    }

    #[test]
    fn ad_lowers_order_on_commutative_algebras(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let a = s.commutative_algebra(10);
        let ders = Arc::new(vec![s.euler_derivation(&a).unwrap(), s.euler_derivation(&a).unwrap()]);
        let terms: Vec<(Vec<u32>, i64)> = vec![(vec![2, 0], s.small_int()), (vec![1, 1], s.nonzero_int()), (vec![0, 1], s.small_int()), (vec![0, 0], 1)];
        let p = OperatorPolynomial::from_ints(&a, 2, &terms).unwrap();
        let u = s.element(&a);
        let pts = test_points(&a, 2, &[]).unwrap();
        let r = ad_lowering_check(&u, &p, ders, &pts).unwrap();
        prop_assert!(r.passed(), "{:?}", r);
    }
}
