//! The grading by joint generalized eigenspaces and extremal weights.

use std::sync::Arc;

use diffrad::algebra::Algebra;
use diffrad::derivation::Derivation;
use diffrad::exactmath::Field;
use diffrad::spectral::{extremality_certificate, find_extremal, fmt_weight, joint_grading, kernel_homogeneity_check};
use diffrad::weylop::OperatorPolynomial;

fn main() -> diffrad::Result<()> {
    let a = Algebra::truncated(Field::Rational, &["x1", "x2"], &[2, 3])?;
    let ders = Arc::new(vec![Derivation::euler(&a, &[1, 0])?, Derivation::euler(&a, &[0, 1])?]);
    let g = joint_grading(ders)?;
    for (w, s) in g.components() {
        println!("A_{} has dim {}", fmt_weight(w), s.dim());
    }

    let u = a.parse("3 + x1 - x1*x2^2")?;
    for (w, part) in g.decompose(&u)? {
        println!("component of u at {}: {part}", fmt_weight(&w));
    }

    let p = OperatorPolynomial::from_ints(&a, 2, &[(vec![1, 0], 1), (vec![0, 1], 1), (vec![0, 0], -2)])?;
    for c in kernel_homogeneity_check(&p, &g)?.checks {
        println!("{:?}: {} ({})", c.status, c.name, c.details);
    }

    let weights = g.weights();
    for w in &weights {
        match extremality_certificate(w, &weights)? {
            None => println!("{} is extremal", fmt_weight(w)),
            Some((m, c)) => println!("{} is not extremal: {m} times it is the combination {c:?}", fmt_weight(w)),
        }
    }
    println!("first extremal weight: {}", fmt_weight(&find_extremal(&weights)?));
    Ok(())
}
