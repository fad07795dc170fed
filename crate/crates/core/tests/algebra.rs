use proptest::prelude::*;

use diffrad::algebra::{nilradical, Algebra, AlgebraKind, Element};
use diffrad::derivation::{derivation_space, Derivation, Tri};
use diffrad::exactmath::{Field, UniPoly};
use diffrad::sample::Sampler;
use diffrad::Error;

fn word_algebra() -> Algebra {
    Algebra::noncommutative(Field::Rational, &["X", "Y"], &["YY"], Some(5)).unwrap()
}

#[test]
fn parser_and_normal_forms() {
    let a = Algebra::truncated(Field::Rational, &["x", "y"], &[3, 2]).unwrap();
    assert_eq!(a.dim(), Some(6));
    let e = a.parse("(x + y)*(x + y)").unwrap();
    assert_eq!(e, a.parse("x^2 + 2*x*y").unwrap());
    assert!(a.parse("x^3").unwrap().is_zero());
    assert!(matches!(a.parse("z"), Err(Error::UnknownVariable(_))));
    assert!(matches!(a.parse("x +"), Err(Error::Syntax { .. })));
    assert!(a.parse("1/2*x - 1/2*x").unwrap().is_zero());
}

#[test]
fn word_quotient() {
    let a = word_algebra();
    let (x, y) = (a.var("X").unwrap(), a.var("Y").unwrap());
    assert!((&y * &y).is_zero());
    assert_ne!(&x * &y, &y * &x);
    // Words of length > 5 are dropped by the truncation.
    assert!(x.pow(6).is_zero());
    assert!(!x.pow(5).is_zero());
    assert!(!a.is_commutative());
}

#[test]
fn exponential_polynomials() {
    let e = Algebra::exp_poly();
    let f = e.parse("x*E(2) + 1").unwrap();
    let g = e.parse("E(-2)").unwrap();
    assert_eq!(&f * &g, e.parse("x + E(-2)").unwrap());
    assert_eq!(e.dim(), None);
    assert!(matches!(e.kind(), AlgebraKind::ExpPoly));
}

#[test]
fn structure_constant_algebras() {
    let q3 = Algebra::product_of_fields(Field::Rational, 3).unwrap();
    assert!(nilradical(&q3).unwrap().is_zero());
    assert!(derivation_space(&q3).unwrap().is_empty());
    let m2 = Algebra::matrices(Field::Rational, 2).unwrap();
    assert_eq!(m2.dim(), Some(4));
    assert!(!m2.is_commutative());
    // Inner derivations of M_2 form a 3-dimensional space.
    assert_eq!(derivation_space(&m2).unwrap().len(), 3);
}

#[test]
fn bad_tables_rejected() {
    let q = Field::Rational;
    let (o, z) = (q.one(), q.zero());
    // Q[e]/(e^2 - e - 1) in the basis {one, e}.
    let good = vec![
        vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]],
        vec![vec![z.clone(), o.clone()], vec![o.clone(), o.clone()]],
    ];
    assert!(Algebra::structure_constants(q, &["one", "e"], good.clone(), 0).is_ok());
    let mut no_unit = good.clone();
    no_unit[0][1] = vec![z.clone(), z.clone()];
    assert!(Algebra::structure_constants(q, &["one", "e"], no_unit, 0).is_err());
    // Basis {one, a, b, c} with bb = a and ab = c: (bb)b = ab = c but b(bb) = ba = 0.
    let e = |i: usize| (0..4).map(|k| if k == i { o.clone() } else { z.clone() }).collect::<Vec<_>>();
    let zero = vec![z.clone(); 4];
    let mut table = vec![vec![zero.clone(); 4]; 4];
    for i in 0..4 {
        table[0][i] = e(i);
        table[i][0] = e(i);
    }
    table[2][2] = e(1);
    table[1][2] = e(3);
    let err = Algebra::structure_constants(q, &["one", "a", "b", "c"], table, 0).unwrap_err();
    assert!(matches!(err, Error::NonAssociativeTable(..)), "{err}");
}

#[test]
fn derivation_validation() {
    let a = Algebra::truncated(Field::Rational, &["x"], &[4]).unwrap();
    // d/dx sends x^4 to 4x^3, which is not in (x^4).
    assert!(matches!(
        Derivation::from_image_strings(&a, &[("x", "1")]),
        Err(Error::IdealNotPreserved { .. })
    ));
    let d = Derivation::from_image_strings(&a, &[("x", "x^2")]).unwrap();
    assert_eq!(d.apply(&a.parse("x^2").unwrap()).unwrap(), a.parse("2*x^3").unwrap());
    let c = d.classify(64).unwrap();
    assert_eq!(c.nilpotent, Tri::Yes);
    assert_eq!(c.locally_nilpotent, Tri::Yes);
}

#[test]
fn euler_derivation_spectrum() {
    let a = Algebra::truncated(Field::Rational, &["x1", "x2"], &[2, 2]).unwrap();
    let d = Derivation::euler(&a, &[1, 1]).unwrap();
    // Eigenvalues 0, 1, 2 with multiplicities 1, 2, 1; D is diagonalizable.
    assert_eq!(d.minimal_polynomial().unwrap(), UniPoly::from_ints(Field::Rational, &[0, 2, -3, 1]));
    let c = d.classify(64).unwrap();
    assert_eq!(c.nilpotent, Tri::No);
    assert_eq!(c.algebraic, Tri::Yes);
}

#[test]
fn d_dx_on_polynomials() {
    let a = Algebra::commutative(Field::Rational, &["x"], vec![]).unwrap();
    let d = Derivation::partial(&a, "x").unwrap();
    assert_eq!(d.apply_power(&a.parse("x^5").unwrap(), 3).unwrap(), a.parse("60*x^2").unwrap());
    let c = d.classify(16).unwrap();
    assert_eq!(c.locally_nilpotent, Tri::Yes);
    // D^k(x^k) = k! for every k, but the orbit search only certifies local facts.
    assert_ne!(c.nilpotent, Tri::Yes);
}

fn random_triple(seed: u64) -> (Algebra, Element, Element, Element) {
    let mut s = Sampler::new(seed);
    let a = match seed % 3 {
        0 => Algebra::noncommutative(Field::Rational, &["X", "Y"], &["YY"], Some(3)).unwrap(),
        1 => Algebra::matrices(Field::Rational, 2).unwrap(),
        _ => s.commutative_algebra(12),
    };
    let (x, y, z) = (s.element(&a), s.element(&a), s.element(&a));
    (a, x, y, z)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(seed in any::<u64>()) {
        let (a, x, y, z) = random_triple(seed);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&y + &z) * &x, &(&y * &x) + &(&z * &x));
        prop_assert_eq!(&a.one() * &x, x.clone());
        prop_assert_eq!(&x * &a.one(), x.clone());
        prop_assert!((&x - &x).is_zero());
        if a.is_commutative() {
            prop_assert_eq!(&x * &y, &y * &x);
        }
    }

    #[test]
    fn display_round_trips(seed in any::<u64>()) {
        let (a, x, _, _) = random_triple(seed);
        prop_assert_eq!(a.parse(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn coordinates_round_trip(seed in any::<u64>()) {
        let (a, x, y, _) = random_triple(seed);
        prop_assert_eq!(a.from_coords(&a.coords(&x).unwrap()).unwrap(), x.clone());
        // Left multiplication matrices represent the product.
        let m = a.left_mult_matrix(&x).unwrap();
        prop_assert_eq!(m.mul_vec(&a.coords(&y).unwrap()).unwrap(), a.coords(&(&x * &y)).unwrap());
    }

    #[test]
    fn derivations_satisfy_leibniz(seed in any::<u64>()) {
        let (a, x, y, _) = random_triple(seed);
        let mut s = Sampler::new(seed ^ 0x5eed);
        let d = s.any_derivation(&a).unwrap();
        prop_assert_eq!(d.apply(&(&x * &y)).unwrap(), &(&d.apply(&x).unwrap() * &y) + &(&x * &d.apply(&y).unwrap()));
        prop_assert!(d.apply(&a.one()).unwrap().is_zero());
    }

    #[test]
    fn nilradical_elements_are_nilpotent(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let a = s.commutative_algebra(12);
        let n = nilradical(&a).unwrap();
        let e = s.element_of(&a, &n);
        prop_assert!(e.pow(a.dim().unwrap() as u32).is_zero());
    }
}
