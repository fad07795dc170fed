//! Kernels and radicals for `P(d/dx)` on exponential polynomials.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use serde_json::json;

use super::Verdict;
use crate::algebra::{Algebra, AlgebraKind, Element, Monomial};
use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::exactmath::{Scalar, UniPoly};
use crate::report::{Check, Report};
use crate::sample::Sampler;
use crate::weylop::{DiffOperator, OperatorPolynomial};

/// The univariate scalar polynomial underlying `P`.
pub fn scalar_polynomial(p: &OperatorPolynomial) -> Result<UniPoly> {
    if p.arity() != 1 {
        return Err(Error::ArityMismatch {
            expected: 1,
            found: p.arity(),
        });
    }
    if !p.is_scalar() {
        return Err(Error::BadDescriptor("polynomial has non-scalar coefficients".into()));
    }
    let f = p.algebra().field();
    let d = p.degree().unwrap_or(0);
    let coeffs = (0..=d)
        .map(|k| p.terms().get(&vec![k as u32]).map_or_else(|| f.zero(), Element::constant_term))
        .collect();
    Ok(UniPoly::new(f, coeffs))
}

fn require_exppoly(alg: &Algebra) -> Result<()> {
    match alg.kind() {
        AlgebraKind::ExpPoly => Ok(()),
        _ => Err(Error::BadDescriptor("expected the exponential-polynomial algebra".into())),
    }
}

/// Basis `{x^j e^{λ_i x} : 0 ≤ j < m_i}` of `Ker P(d/dx)`, given the roots of
/// `P` with multiplicities. The factorization is checked against `P`, and
/// every basis element is checked to be annihilated.
pub fn ker_op_exppoly(p: &OperatorPolynomial, roots: &[(Scalar, usize)]) -> Result<Vec<Element>> {
    let alg = p.algebra();
    require_exppoly(alg)?;
    let poly = scalar_polynomial(p)?;
    if poly.is_zero() {
        return Err(Error::RootFactorizationMismatch("P is zero".into()));
    }
    let f = alg.field();
    let product = roots
        .iter()
        .fold(UniPoly::one(f), |acc, (r, m)| acc.mul(&UniPoly::linear(r).pow(*m as u32)));
    if product != poly.monic()? {
        return Err(Error::RootFactorizationMismatch(format!("{product} vs {}", poly.monic()?)));
    }
    let phi = DiffOperator::from_polynomial(p, Arc::new(vec![Derivation::d_dx(alg)?]))?;
    let mut basis = Vec::new();
    for (r, m) in roots {
        let rate = r.as_rational().expect("rational field").clone();
        for j in 0..*m {
            let e = alg.exp_term(rate.clone(), j as u32);
            if !phi.apply(&e)?.is_zero() {
                return Err(Error::Internal(format!("P(D) does not annihilate {e}")));
            }
            basis.push(e);
        }
    }
    Ok(basis)
}

/// [`ker_op_exppoly`] with the roots found exactly over ℚ.
pub fn exppoly_kernel(p: &OperatorPolynomial) -> Result<Vec<Element>> {
    let roots = scalar_polynomial(p)?.split()?;
    ker_op_exppoly(p, &roots)
}

/// Radical membership for a subspace spanned by monomials `x^j e^{λx}`.
///
/// Order monomials by (rate, degree). The largest and smallest terms of
/// `u^m` are the `m`-th powers of those of `u` and never cancel, so if
/// either is not the constant monomial, its `m`-th power leaves any finite
/// monomial set for large `m`. Otherwise `u` is a constant `c` and
/// `u^m = c^m`. Returns the verdict and, when `u ∉ r(V)`, a power `m0` with
/// `u^m ∉ V` for all `m ≥ m0`.
pub fn radical_member_exppoly(u: &Element, kernel: &[Element]) -> Result<(Verdict, Option<u32>)> {
    require_exppoly(u.algebra())?;
    let mut support = Vec::new();
    for e in kernel {
        if e.terms().len() != 1 {
            return Err(Error::BadDescriptor(format!("{e} is not a single monomial")));
        }
        support.push(e.terms().keys().next().expect("one term").clone());
    }
    if u.is_zero() {
        return Ok((Verdict::InRadical, None));
    }
    let constant = Monomial::Exp {
        rate: BigRational::zero(),
        degree: 0,
    };
    let top = u.terms().keys().next_back().expect("nonzero");
    let bottom = u.terms().keys().next().expect("nonzero");
    let escaping = if *top != constant { top } else { bottom };
    if *escaping == constant {
        // u is a nonzero constant.
        return Ok(if support.contains(&constant) {
            (Verdict::InRadical, None)
        } else {
            (Verdict::NotInRadical, Some(1))
        });
    }
    let Monomial::Exp { rate, degree } = escaping else {
        return Err(Error::Internal("non-exponential monomial".into()));
    };
    // Powers m with (m·rate, m·degree) in the support; there are finitely many.
    let zero_rate = BigRational::zero();
    let last_inside = support
        .iter()
        .filter_map(|m| {
            let Monomial::Exp { rate: r, degree: d } = m else { return None };
            let k: u32 = if *rate != zero_rate {
                let q = r / rate;
                if !q.is_integer() || q <= zero_rate {
                    return None;
                }
                q.to_integer().try_into().ok()?
            } else {
                if *r != zero_rate || *d == 0 || d % degree != 0 {
                    return None;
                }
                d / degree
            };
            (k as u64 * *degree as u64 == *d as u64).then_some(k)
        })
        .max()
        .unwrap_or(0);
    Ok((Verdict::NotInRadical, Some(last_inside + 1)))
}

/// Kernel basis annihilation and the dichotomy `r(Ker P(D)) = {0}` when
/// `P(0) ≠ 0`, constants when `P(0) = 0`, on sampled exponential polynomials.
pub fn exppoly_radical_check(p: &OperatorPolynomial, sampler: &mut Sampler, samples: usize) -> Result<Report> {
    let alg = p.algebra().clone();
    let mut report = Report::new();
    let kernel = exppoly_kernel(p)?;
    let phi = DiffOperator::from_polynomial(p, Arc::new(vec![Derivation::d_dx(&alg)?]))?;
    let killed = kernel.iter().all(|e| phi.apply(e).map(|v| v.is_zero()).unwrap_or(false));
    report.push(Check::verdict(
        format!("kernel basis of {p} is annihilated"),
        killed,
        format!("basis: [{}]", kernel.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ")),
    ));

    let p0_zero = scalar_polynomial(p)?.coeff(0).is_zero();
    let mut points = vec![alg.zero(), alg.one(), alg.int(-2), alg.parse("x")?];
    points.extend(kernel.iter().cloned());
    for _ in 0..samples {
        points.push(sampler.element(&alg));
    }
    let mut mismatches = Vec::new();
    for u in &points {
        let (verdict, escape) = radical_member_exppoly(u, &kernel)?;
        let expected = if u.is_zero() || (p0_zero && u.is_scalar()) {
            Verdict::InRadical
        } else {
            Verdict::NotInRadical
        };
        // The decision itself is confirmed by applying P(D) to a few powers.
        let confirmed = match (verdict, escape) {
            (Verdict::InRadical, _) => (1..=4).all(|m| phi.apply(&u.pow(m)).map(|v| v.is_zero()).unwrap_or(false)),
            (Verdict::NotInRadical, Some(m0)) => {
                (m0..m0 + 3).all(|m| phi.apply(&u.pow(m)).map(|v| !v.is_zero()).unwrap_or(false))
            }
            (Verdict::NotInRadical, None) => false,
        };
        if verdict != expected || !confirmed {
            mismatches.push(json!({"u": u.to_string(), "verdict": verdict, "confirmed": confirmed}));
        }
    }
    let name = format!("radical of Ker P(D) for P = {p}");
    let expect = if p0_zero { "constants" } else { "{0}" };
    report.push(if mismatches.is_empty() {
        Check::pass(name, format!("all {} sampled elements agree with r = {expect}", points.len()))
    } else {
        Check::fail(name, format!("{} disagreements with r = {expect}", mismatches.len()))
            .with_counterexample(serde_json::Value::Array(mismatches))
    });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::Field;

    fn poly(c: &[i64]) -> OperatorPolynomial {
        OperatorPolynomial::univariate(&Algebra::exp_poly(), &UniPoly::from_ints(Field::Rational, c))
    }

    #[test]
    fn distinct_roots() {
        let k = exppoly_kernel(&poly(&[2, -3, 1])).unwrap();
        let names: Vec<String> = k.iter().map(|e| e.to_string()).collect();
        assert_eq!(names, ["E(1)", "E(2)"]);
    }

    #[test]
    fn repeated_roots() {
        let k = exppoly_kernel(&poly(&[0, 0, 1])).unwrap();
        assert_eq!(k.iter().map(|e| e.to_string()).collect::<Vec<_>>(), ["1", "x"]);
        let k = exppoly_kernel(&poly(&[1, -2, 1])).unwrap();
        assert_eq!(k.iter().map(|e| e.to_string()).collect::<Vec<_>>(), ["E(1)", "x*E(1)"]);
    }

    #[test]
    fn wrong_roots_rejected() {
        let q = Field::Rational;
        let r = ker_op_exppoly(&poly(&[2, -3, 1]), &[(q.int(1), 2)]);
        assert!(matches!(r, Err(Error::RootFactorizationMismatch(_))));
    }

    #[test]
    fn radical_decisions() {
        let e = Algebra::exp_poly();
        let k = exppoly_kernel(&poly(&[0, -1, 1])).unwrap(); // roots 0, 1
        assert_eq!(radical_member_exppoly(&e.int(3), &k).unwrap().0, Verdict::InRadical);
        // e^x is in the kernel but e^{2x} is not.
        assert_eq!(radical_member_exppoly(&e.parse("E(1)").unwrap(), &k).unwrap(), (Verdict::NotInRadical, Some(2)));
        let k = exppoly_kernel(&poly(&[2, -3, 1])).unwrap(); // roots 1, 2
        assert_eq!(radical_member_exppoly(&e.parse("E(1)").unwrap(), &k).unwrap(), (Verdict::NotInRadical, Some(3)));
        assert_eq!(radical_member_exppoly(&e.one(), &k).unwrap(), (Verdict::NotInRadical, Some(1)));
    }

    #[test]
    fn dichotomy_holds_on_samples() {
        let mut s = Sampler::new(3);
        for c in [&[2, -3, 1][..], &[0, 0, 1], &[0, 1, 1], &[1, -2, 1], &[-6, 11, -6, 1]] {
            let r = exppoly_radical_check(&poly(c), &mut s, 20).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }
}
