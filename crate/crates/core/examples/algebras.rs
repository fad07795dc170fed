//! Building algebras of each kind and working with their elements.

use diffrad::algebra::{nilradical, Algebra};
use diffrad::exactmath::Field;

fn main() -> diffrad::Result<()> {
    let q = Field::Rational;

    let a = Algebra::truncated(q, &["x", "y"], &[3, 2])?;
    let u = a.parse("1 + x - 2*x*y")?;
    println!("{a}, dim {}", a.dim().unwrap());
    println!("u^3 = {}", u.pow(3));
    println!("nilradical has dim {}", nilradical(&a)?.dim());

    let w = Algebra::noncommutative(q, &["X", "Y"], &["YY"], None)?;
    let f = w.parse("X*Y")?;
    println!("in {w}: (XY)^3 = {}, YX*XY = {}", f.pow(3), &w.parse("Y*X")? * &f);

    let m2 = Algebra::matrices(q, 2)?;
    let e12 = m2.parse("E12")?;
    let e21 = m2.parse("E21")?;
    println!("E12*E21 = {}, E21*E12 = {}", &e12 * &e21, &e21 * &e12);

    let e = Algebra::exp_poly();
    let g = e.parse("x*E(2) + 1")?;
    println!("exponential polynomials: ({g})^2 = {}", g.pow(2));

    let f7 = Algebra::commutative(Field::prime(7)?, &["t"], vec![vec![7]])?;
    println!("in {f7}: (1 + t)^7 = {}", f7.parse("1 + t")?.pow(7));
    Ok(())
}
