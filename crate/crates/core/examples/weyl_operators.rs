//! Differential operators P(D), iterated commutators, and the identity
//! a0*u^d = (-1)^d d! P_d(grad u) on a generated instance.

use std::sync::Arc;

use diffrad::algebra::Algebra;
use diffrad::cli::suites::power_kernel_instance;
use diffrad::derivation::Derivation;
use diffrad::exactmath::Field;
use diffrad::sample::Sampler;
use diffrad::weylop::{ad_expansion_check, power_kernel_check, DiffOperator, OperatorPolynomial};

fn main() -> diffrad::Result<()> {
    let a = Algebra::truncated(Field::Rational, &["x1", "x2"], &[3, 3])?;
    let ders = Arc::new(vec![Derivation::euler(&a, &[1, 0])?, Derivation::euler(&a, &[0, 1])?]);

    let p = OperatorPolynomial::parse_terms(&a, 2, &[(vec![1, 1], "1"), (vec![0, 1], "x1"), (vec![0, 0], "-2")])?;
    let phi = DiffOperator::from_polynomial(&p, ders.clone())?;
    let u = a.parse("x1 + x2^2")?;
    println!("P = {p}");
    println!("P(D)(u) = {}", phi.apply(&u)?);
    println!("ad_u P(D) has order {:?}", phi.ad(&u).order());

    let points = a.basis_elements()?;
    for k in 1..=3 {
        let c = ad_expansion_check(&u, &phi, k, &points)?;
        println!("{:?}: {} ({})", c.status, c.name, c.details);
    }

    let mut s = Sampler::new(3);
    if let Some((p, u)) = power_kernel_instance(&a, &ders, 2, &mut s)? {
        println!("generated P = {p}, u = {u}");
        for c in power_kernel_check(&p, ders, &u)?.checks {
            println!("  {:?}: {} ({})", c.status, c.name, c.details);
        }
    }
    Ok(())
}
