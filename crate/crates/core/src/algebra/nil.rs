use super::{Algebra, AlgebraKind, Element, Monomial};
use crate::error::{Error, Result};
use crate::exactmath::{Matrix, Scalar, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Nilpotency {
    /// `a^index = 0` and `a^{index-1} ≠ 0`.
    Yes(u32),
    No,
    Unknown,
}

impl Element {
    /// Decides nilpotency exactly on finite-dimensional algebras; on infinite
    /// presentations uses the power budget and a leading-monomial argument.
    pub fn is_nilpotent(&self, budget: u32) -> Nilpotency {
        if self.is_zero() {
            return Nilpotency::Yes(1);
        }
        let alg = self.algebra();
        if let Some(d) = alg.dim() {
            // The subalgebra generated by a has dimension ≤ d, so a nilpotent
            // element satisfies a^{d+1} = 0.
            let mut p = self.clone();
            for m in 1..=(d as u32 + 1) {
                if p.is_zero() {
                    return Nilpotency::Yes(m);
                }
                p = &p * self;
            }
            return if p.is_zero() { Nilpotency::Yes(d as u32 + 2) } else { Nilpotency::No };
        }
        match alg.kind() {
            // A domain: nonzero elements are never nilpotent.
            AlgebraKind::ExpPoly => return Nilpotency::No,
            AlgebraKind::Commutative { ideal, .. } => {
                let lead = self.terms().keys().max_by(|a, b| a.degree().cmp(&b.degree()).then(a.cmp(b)));
                if let Some(Monomial::Exponents(e)) = lead {
                    // lead^k escapes every generator g iff g needs a variable absent from lead.
                    if ideal.iter().all(|g| g.iter().zip(e).any(|(&gi, &ei)| gi > 0 && ei == 0)) {
                        return Nilpotency::No;
                    }
                }
            }
            AlgebraKind::Noncommutative { ideal, .. } => {
                let lead = self.terms().keys().max_by(|a, b| a.degree().cmp(&b.degree()).then(a.cmp(b)));
                if let Some(Monomial::Word(w)) = lead {
                    // Every factor of w^k of length ≤ max|g| already occurs in w^r.
                    let longest = ideal.iter().map(Vec::len).max().unwrap_or(0);
                    let r = if w.is_empty() { 1 } else { longest.div_ceil(w.len()) + 1 };
                    let wr: Vec<usize> = w.iter().copied().cycle().take(w.len() * r).collect();
                    if w.is_empty() || !ideal.iter().any(|g| super::contains_factor(&wr, g)) {
                        return Nilpotency::No;
                    }
                }
            }
            AlgebraKind::StructureConstants { .. } => unreachable!("structure constants are finite"),
        }
        let mut p = self.clone();
        for m in 1..=budget {
            if p.is_zero() {
                return Nilpotency::Yes(m);
            }
            p = &p * self;
        }
        Nilpotency::Unknown
    }
}

/// The nilradical of a finite-dimensional commutative ℚ-algebra, as the
/// radical of the trace form `(x, y) ↦ tr(L_{xy})`.
pub fn nilradical(algebra: &Algebra) -> Result<Subspace> {
    if !algebra.is_commutative() {
        return Err(Error::Noncommutative);
    }
    if !algebra.field().is_rational() {
        return Err(Error::CharPUnsupported);
    }
    let d = algebra.require_finite()?;
    let field = algebra.field();
    let basis = algebra.basis_elements()?;
    let traces: Vec<Scalar> = basis
        .iter()
        .map(|b| {
            let m = algebra.left_mult_matrix(b)?;
            Ok((0..d).fold(field.zero(), |acc, i| &acc + &m[(i, i)]))
        })
        .collect::<Result<_>>()?;
    let mut gram = Matrix::zeros(field, d, d);
    for i in 0..d {
        for j in i..d {
            let prod = algebra.coords(&(&basis[i] * &basis[j]))?;
            let t = prod
                .iter()
                .zip(&traces)
                .fold(field.zero(), |acc, (c, t)| &acc + &(c * t));
            gram[(i, j)] = t.clone();
            gram[(j, i)] = t;
        }
    }
    let nil = gram.kernel();
    for v in nil.basis() {
        let n = algebra.from_coords(v)?;
        if !matches!(n.is_nilpotent(0), Nilpotency::Yes(_)) {
            return Err(Error::Internal(format!("trace-form kernel element {n} is not nilpotent")));
        }
        for b in &basis {
            if !nil.contains(&algebra.coords(&(&n * b))?)? {
                return Err(Error::Internal("trace-form kernel is not an ideal".into()));
            }
        }
    }
    Ok(nil)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::Field;

    const Q: Field = Field::Rational;

    #[test]
    fn nilpotency_examples() {
        let a = Algebra::truncated(Q, &["x"], &[3]).unwrap();
        assert_eq!(a.var("x").unwrap().is_nilpotent(0), Nilpotency::Yes(3));
        assert_eq!(a.one().is_nilpotent(0), Nilpotency::No);
        let e = Algebra::exp_poly();
        assert_eq!(e.parse("E(1)").unwrap().is_nilpotent(10), Nilpotency::No);
        let w = Algebra::noncommutative(Q, &["X", "Y"], &["YY"], None).unwrap();
        assert_eq!(w.var("X").unwrap().is_nilpotent(10), Nilpotency::No);
        assert_eq!(w.parse("X*Y").unwrap().is_nilpotent(10), Nilpotency::No);
        assert_eq!(w.var("Y").unwrap().is_nilpotent(10), Nilpotency::Yes(2));
    }

    #[test]
    fn infinite_commutative() {
        let a = Algebra::commutative(Q, &["x", "y"], vec![vec![0, 2]]).unwrap();
        assert_eq!(a.dim(), None);
        assert_eq!(a.parse("x + y").unwrap().is_nilpotent(10), Nilpotency::No);
        assert_eq!(a.parse("y").unwrap().is_nilpotent(10), Nilpotency::Yes(2));
    }

    #[test]
    fn nilradical_examples() {
        let a = Algebra::truncated(Q, &["x"], &[3]).unwrap();
        let n = nilradical(&a).unwrap();
        assert_eq!(n, a.span(&[a.parse("x").unwrap(), a.parse("x^2").unwrap()]).unwrap());

        let p = Algebra::product_of_fields(Q, 2).unwrap();
        assert_eq!(nilradical(&p).unwrap().dim(), 0);

        let b = Algebra::truncated(Q, &["x1", "x2"], &[2, 3]).unwrap();
        assert_eq!(nilradical(&b).unwrap().dim(), 5);
    }

    #[test]
    fn nilradical_rejects_prime_fields() {
        let a = Algebra::truncated(Field::prime(3).unwrap(), &["x"], &[3]).unwrap();
        assert_eq!(nilradical(&a), Err(Error::CharPUnsupported));
    }
}
