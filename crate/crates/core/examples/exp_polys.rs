//! Kernels of P(d/dx) on exponential polynomials and their radicals.

use diffrad::algebra::Algebra;
use diffrad::exactmath::{Field, UniPoly};
use diffrad::kerrad::{exppoly_kernel, radical_member_exppoly};
use diffrad::weylop::OperatorPolynomial;

fn main() -> diffrad::Result<()> {
    let e = Algebra::exp_poly();
    for coeffs in [&[2, -3, 1][..], &[0, -1, 1], &[1, -2, 1], &[0, 0, 1]] {
        let p = OperatorPolynomial::univariate(&e, &UniPoly::from_ints(Field::Rational, coeffs));
        let kernel = exppoly_kernel(&p)?;
        println!("P = {p}: kernel basis [{}]", kernel.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(", "));
        for u in ["5", "E(1)", "x", "E(1) + E(2)"] {
            let (v, m0) = radical_member_exppoly(&e.parse(u)?, &kernel)?;
            let tail = m0.map_or(String::new(), |m| format!(", powers leave the kernel from m = {m}"));
            println!("    {u}: {v:?}{tail}");
        }
    }
    Ok(())
}
