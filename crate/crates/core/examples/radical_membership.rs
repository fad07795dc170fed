//! Deciding whether all large powers of an element lie in a subspace.

use std::sync::Arc;

use diffrad::algebra::Algebra;
use diffrad::derivation::Derivation;
use diffrad::exactmath::Field;
use diffrad::kerrad::{ker_op, radical_member, radical_threshold};
use diffrad::weylop::{DiffOperator, OperatorPolynomial};

fn main() -> diffrad::Result<()> {
    let q = Field::Rational;
    let a = Algebra::truncated(q, &["x1", "x2"], &[2, 3])?;
    let ders = Arc::new(vec![Derivation::euler(&a, &[1, 1])?]);
    // (D - 1)(D - 2): the kernel is spanned by monomials of degree 1 and 2.
    let p = OperatorPolynomial::from_ints(&a, 1, &[(vec![2], 1), (vec![1], -3), (vec![0], 2)])?;
    let v = ker_op(&DiffOperator::from_polynomial(&p, ders)?)?;
    println!("dim Ker P(D) = {}", v.dim());

    for text in ["x1 + x2", "x2^2", "1 + x1", "x1*x2^2"] {
        let u = a.parse(text)?;
        let d = radical_member(&u, &v)?;
        println!(
            "{text:>10}: {:?}, stable span dim {}, powers in V from m = {:?}",
            d.verdict,
            d.stable_span.dim(),
            radical_threshold(&u, &v)?
        );
    }

    // An idempotent of Q x Q: its powers never leave span{e1}.
    let qq = Algebra::product_of_fields(q, 2)?;
    let e1 = qq.parse("one - e2")?;
    let e2_line = qq.span(&[qq.parse("e2")?])?;
    println!("e1 in r(span e2): {}", radical_member(&e1, &e2_line)?.in_radical());
    Ok(())
}
