//! Differential Vandermonde determinants det(D^(i-1)(f^j)) and their closed form.

use diffrad::algebra::Algebra;
use diffrad::derivation::Derivation;
use diffrad::exactmath::Field;
use diffrad::vandermonde::{alpha_recursion, build_matrix, factorial_hankel_check};

fn main() -> diffrad::Result<()> {
    let a = Algebra::truncated(Field::Rational, &["x", "y"], &[4, 3])?;
    let d = Derivation::from_image_strings(&a, &[("x", "x*y"), ("y", "y^2")])?;
    let f = a.parse("1 + x - y")?;
    for n in 1..=4 {
        let m = build_matrix(&f, &d, n)?;
        let det = m.determinant()?;
        println!("n = {n}: alpha = {}, det = {det}, closed form agrees: {}", m.alpha(), det == m.closed_form()?);
    }

    let e = Algebra::exp_poly();
    let m = build_matrix(&e.parse("E(1)")?, &Derivation::d_dx(&e)?, 4)?;
    println!("f = e^x, n = 4: det = {}", m.determinant()?);

    for t in alpha_recursion(6) {
        println!("column reduction coefficients for k = {}: {:?}", t.k, t.coefficients.iter().map(|c| c.to_string()).collect::<Vec<_>>());
    }
    for c in factorial_hankel_check(6)?.checks {
        println!("{}: {}", c.name, c.details);
    }
    Ok(())
}
