//! Exact RREF, kernels, determinants, minimal polynomials and the small LP
//! behind the extremality test.

use diffrad::exactmath::{lp_feasible_max, Field, Matrix};

fn main() -> diffrad::Result<()> {
    let q = Field::Rational;
    let m = Matrix::from_ints(q, &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
    let r = m.rref();
    println!("rank {} with pivots {:?}", r.rank, r.pivots);
    for v in m.kernel().basis() {
        println!("kernel vector: {}", v.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", "));
    }

    let j = Matrix::from_ints(q, &[&[2, 1, 0], &[0, 2, 0], &[0, 0, 3]]);
    println!("det = {}, minimal polynomial = {}", j.det_bareiss()?, j.minimal_polynomial()?);

    // The same matrix over F_5.
    let f5 = Field::prime(5)?;
    let j5 = Matrix::from_ints(f5, &[&[2, 1, 0], &[0, 2, 0], &[0, 0, 3]]);
    println!("over F_5: det = {}", j5.det_bareiss()?);

    // Is (1, 0) a combination t·(2, 0) with 0 < t <= 1?
    let out = lp_feasible_max(&[vec![q.int(2), q.int(0)]], &[q.int(1), q.int(0)])?;
    println!("LP optimum: {:?}", out.value().map(|v| v.to_string()));
    Ok(())
}
