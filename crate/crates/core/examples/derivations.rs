//! Defining derivations, checking them, and classifying them.

use diffrad::algebra::Algebra;
use diffrad::derivation::{derivation_space, Derivation};
use diffrad::exactmath::Field;

fn main() -> diffrad::Result<()> {
    let q = Field::Rational;
    let a = Algebra::truncated(q, &["x1", "x2"], &[2, 3])?;

    let euler = Derivation::euler(&a, &[1, 1])?;
    let c = euler.classify(64)?;
    println!(
        "sum x_i d_i: nilpotent {:?}, locally finite {:?}, minimal polynomial {}",
        c.nilpotent,
        c.locally_finite,
        c.minimal_polynomial.map_or("none".into(), |p| p.to_string())
    );

    let nil = Derivation::from_image_strings(&a, &[("x1", "x1*x2"), ("x2", "x2^2")])?;
    println!("x_i -> x_i*x2 is nilpotent: {:?}", nil.classify(64)?.nilpotency_index);

    // d/dx is not a derivation of Q[x]/(x^4).
    let t = Algebra::truncated(q, &["x"], &[4])?;
    match Derivation::from_image_strings(&t, &[("x", "1")]) {
        Ok(_) => println!("unexpected: d/dx accepted"),
        Err(e) => println!("rejected: {e}"),
    }

    println!("dim Der(A) = {}", derivation_space(&a)?.len());
    println!("dim Der(Q^3) = {}", derivation_space(&Algebra::product_of_fields(q, 3)?)?.len());

    let poly = Algebra::commutative(q, &["x"], vec![])?;
    let d = Derivation::partial(&poly, "x")?;
    let c = d.classify(16)?;
    // Only local facts can be certified from a bounded orbit search.
    println!("on Q[x], d/dx: locally nilpotent {:?}, nilpotent {:?}", c.locally_nilpotent, c.nilpotent);
    Ok(())
}
