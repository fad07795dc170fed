//! Checks that rest on the grading: the shifted Leibniz rule, homogeneity of
//! kernels, the extremal-component dichotomy, radicals in degree zero, and
//! images of derivations.

use std::sync::Arc;

use serde_json::json;

use super::{fmt_weight, is_extremal, Grading};
use crate::algebra::{nilradical, Algebra, AlgebraKind, Element, Nilpotency};
use crate::derivation::{derivation_space, Derivation};
use crate::error::{Error, Result};
use crate::exactmath::{binomial, Field, Matrix, Scalar};
use crate::kerrad::{exppoly_kernel, is_reduced, ker_op, radical_member, radical_member_exppoly};
use crate::report::{Check, Report, Status};
use crate::sample::Sampler;
use crate::weylop::{DiffOperator, OperatorPolynomial};

fn shifted(d: &Derivation, lambda: &Scalar, k: u32, x: &Element) -> Result<Element> {
    let mut y = x.clone();
    for _ in 0..k {
        y = &d.apply(&y)? - &y.scale(lambda);
    }
    Ok(y)
}

/// `(D − (λ+μ))^m(ab) = Σ_i C(m,i) ((D − λ)^i a)((D − μ)^{m−i} b)` on the
/// given pairs. Needs no commutativity.
pub fn shifted_leibniz_check(
    d: &Derivation,
    lambda: &Scalar,
    mu: &Scalar,
    m: u32,
    pairs: &[(Element, Element)],
) -> Result<Check> {
    let name = format!("shifted Leibniz rule m={m}, l={lambda}, mu={mu}");
    let f = d.algebra().field();
    let sum = lambda + mu;
    for (a, b) in pairs {
        let lhs = shifted(d, &sum, m, &(a * b))?;
        let mut rhs = d.algebra().zero();
        for i in 0..=m {
            let term = &shifted(d, lambda, i, a)? * &shifted(d, mu, m - i, b)?;
            rhs = &rhs + &term.scale(&binomial(f, m as u64, i as u64));
        }
        if lhs != rhs {
            return Ok(Check::fail(name, "sides differ").with_counterexample(json!({
                "a": a.to_string(), "b": b.to_string(), "lhs": lhs.to_string(), "rhs": rhs.to_string()
            })));
        }
    }
    Ok(Check::pass(name, format!("{} pairs", pairs.len())))
}

/// For scalar `P`: `Ker P(D) = ⊕_λ (A_λ ∩ Ker P(D))`, and
/// `Ker P(D) ⊆ ⊕_{P(λ)=0} A_λ`.
pub fn kernel_homogeneity_check(p: &OperatorPolynomial, grading: &Grading) -> Result<Report> {
    let phi = DiffOperator::from_polynomial(p, grading.derivations().clone())?;
    let v = ker_op(&phi)?;
    let mut report = Report::new();

    let alg = grading.algebra();
    let mut pieces = crate::exactmath::Subspace::zero(alg.field(), v.ambient_dim());
    for (_, s) in grading.components() {
        pieces = pieces.sum(&s.intersection(&v)?)?;
    }
    report.push(Check::verdict(
        format!("Ker P(D) is homogeneous for P = {p}"),
        pieces == v,
        format!("dim Ker = {}, dim of homogeneous pieces = {}", v.dim(), pieces.dim()),
    ));

    let mut zeros = Vec::new();
    for w in grading.weights() {
        if p.eval_scalar(&w)?.is_zero() {
            zeros.push(w);
        }
    }
    let target = grading.sum_of(|w| zeros.iter().any(|z| z.as_slice() == w))?;
    report.push(Check::verdict(
        format!("Ker P(D) lies in the sum over zeros of P = {p}"),
        v.is_subset(&target)?,
        format!("zeros: [{}]", zeros.iter().map(|w| fmt_weight(w)).collect::<Vec<_>>().join(", ")),
    ));
    Ok(report)
}

/// Recovers `P_k(λ)` for `k = 0..d` from the values `P(mλ)`, `m = 1..d+1`,
/// by solving the Vandermonde system `Σ_k m^k P_k(λ) = P(mλ)`.
pub fn homogeneous_values_from_dilations(p: &OperatorPolynomial, lambda: &[Scalar]) -> Result<Vec<Scalar>> {
    let f = p.algebra().field();
    let d = p.degree().unwrap_or(0);
    let mut rows = Vec::new();
    let mut values = Vec::new();
    for m in 1..=d as i64 + 1 {
        let ms = f.int(m);
        rows.push((0..=d as u32).map(|k| ms.pow(k)).collect());
        let point: Vec<Scalar> = lambda.iter().map(|l| l * &ms).collect();
        values.push(p.eval_scalar(&point)?);
    }
    Matrix::from_rows(f, rows)?
        .solve(&values)?
        .ok_or_else(|| Error::Internal("Vandermonde system is singular".into()))
}

/// For `u ∈ r(Ker P(D))` with homogeneous components `u_λ`: at every
/// extremal weight `λ` of the support, `u_λ` is nilpotent or `P_k(λ) = 0`
/// for all `k`.
pub fn extremal_component_check(p: &OperatorPolynomial, grading: &Grading, u: &Element) -> Result<Report> {
    let name = format!("extremal components of u = {u}");
    let mut report = Report::new();
    let phi = DiffOperator::from_polynomial(p, grading.derivations().clone())?;
    let v = ker_op(&phi)?;
    if !radical_member(u, &v)?.in_radical() {
        report.push(Check::new(name, Status::HypothesisNotMet, "u is not in r(Ker P(D))"));
        return Ok(report);
    }
    let parts = grading.decompose(u)?;
    let support: Vec<Vec<Scalar>> = parts.iter().map(|(w, _)| w.clone()).collect();
    let d = p.degree().unwrap_or(0);
    let budget = grading.algebra().dim().unwrap_or(0) as u32 + 1;
    let mut seen = Vec::new();
    let mut bad = Vec::new();
    for (w, comp) in &parts {
        if !is_extremal(w, &support)? {
            continue;
        }
        let nilpotent = matches!(comp.is_nilpotent(budget), Nilpotency::Yes(_));
        let vanishes = (0..=d)
            .map(|k| p.homogeneous(k).eval_scalar(w))
            .collect::<Result<Vec<_>>>()?
            .iter()
            .all(Scalar::is_zero);
        seen.push(fmt_weight(w));
        if !nilpotent && !vanishes {
            bad.push(json!({"weight": fmt_weight(w), "component": comp.to_string()}));
        }
    }
    report.push(if bad.is_empty() {
        Check::pass(name, format!("extremal weights [{}]", seen.join(", ")))
    } else {
        Check::fail(name, "a component is neither nilpotent nor at a common zero").with_counterexample(json!(bad))
    });
    Ok(report)
}

fn is_plain_d_dx(d: &Derivation) -> Result<bool> {
    let alg = d.algebra();
    let x = alg.parse("x")?;
    Ok(d.apply(&x)? == alg.one())
}

/// On a reduced algebra: if the homogeneous parts `P_k` (`k ≥ 1`) have no
/// common nonzero zero, every `u ∈ r(Ker P(D))` lies in `A_0`; if
/// `P(0) ≠ 0`, then `r(Ker P(D)) = {0}`.
///
/// For one derivation and `deg P ≥ 1` the first hypothesis always holds;
/// for several it must be asserted by the caller. Finite-dimensional
/// algebras use the eigenspace grading and the exact radical decision; the
/// exponential polynomials with `d/dx` are graded by exponential rate.
pub fn radical_in_degree_zero_check(
    p: &OperatorPolynomial,
    ders: Arc<Vec<Derivation>>,
    sampler: &mut Sampler,
    samples: usize,
    assert_no_common_zero: bool,
) -> Result<Report> {
    let alg = p.algebra().clone();
    if !is_reduced(&alg)? {
        return Err(Error::NotReduced);
    }
    let n = ders.len();
    let stmt1 = (n == 1 && p.degree().unwrap_or(0) >= 1) || assert_no_common_zero;
    let stmt2 = !p.constant().is_zero();
    let mut points = vec![alg.zero()];
    if let Some(basis) = alg.dim().map(|_| alg.basis_elements()).transpose()? {
        points.extend(basis);
    } else {
        points.extend([alg.one(), alg.int(2), alg.parse("x")?]);
    }
    for _ in 0..samples {
        points.push(sampler.element(&alg));
    }

    // (in radical, in A_0) for each point.
    let mut decide: Vec<(bool, bool)> = Vec::new();
    if matches!(alg.kind(), AlgebraKind::ExpPoly) {
        if n != 1 || !is_plain_d_dx(&ders[0])? {
            return Err(Error::BadDescriptor("exponential polynomials are graded only for d/dx".into()));
        }
        let kernel = exppoly_kernel(p)?;
        for u in &points {
            let inside = radical_member_exppoly(u, &kernel)?.0 == crate::kerrad::Verdict::InRadical;
            let rate_zero = u.terms().keys().all(|m| matches!(m, crate::algebra::Monomial::Exp { rate, .. } if num_traits::Zero::is_zero(rate)));
            decide.push((inside, rate_zero));
        }
    } else {
        let grading = super::joint_grading(ders.clone())?;
        let v = ker_op(&DiffOperator::from_polynomial(p, ders)?)?;
        let a0 = grading.zero_component();
        for u in &points {
            decide.push((radical_member(u, &v)?.in_radical(), a0.contains(&alg.coords(u)?)?));
        }
    }

    let members = decide.iter().filter(|(r, _)| *r).count();
    let mut report = Report::new();
    let name1 = "radical lies in the degree-zero component";
    report.push(if !stmt1 {
        Check::new(name1, Status::NotApplicable, "no-common-zero hypothesis not asserted")
    } else {
        let bad: Vec<String> = points
            .iter()
            .zip(&decide)
            .filter(|(_, (r, z))| *r && !*z)
            .map(|(u, _)| u.to_string())
            .collect();
        Check::verdict(name1, bad.is_empty(), format!("{members} radical members among {} points", points.len()))
            .with_counterexample(json!(bad))
    });
    let name2 = "nonzero constant term: radical is zero";
    report.push(if !stmt2 {
        Check::new(name2, Status::NotApplicable, "P(0) = 0")
    } else {
        let bad: Vec<String> = points
            .iter()
            .zip(&decide)
            .filter(|(u, (r, _))| *r && !u.is_zero())
            .map(|(u, _)| u.to_string())
            .collect();
        Check::verdict(name2, bad.is_empty(), format!("{members} radical members among {} points", points.len()))
            .with_counterexample(json!(bad))
    });
    for c in report.checks.iter_mut() {
        if c.counterexample.as_ref().is_some_and(|v| v.as_array().is_some_and(Vec::is_empty)) {
            c.counterexample = None;
        }
    }
    Ok(report)
}

/// Image of `D` lies in the nilradical (every derivation of a
/// finite-dimensional commutative algebra is algebraic, hence integral);
/// `D` maps random subspaces into the nilradical; and on reduced algebras of
/// characteristic zero the only derivation is zero.
pub fn derivation_image_checks(d: &Derivation, sampler: &mut Sampler, subspaces: usize) -> Result<Report> {
    let alg = d.algebra().clone();
    let mut report = Report::new();
    if !alg.is_commutative() {
        return Err(Error::Noncommutative);
    }
    alg.require_finite()?;
    let m = d.matrix_of()?;
    match nilradical(&alg) {
        Ok(nil) => {
            let image = m.image();
            report.push(Check::verdict(
                format!("image of {} lies in the nilradical", d.name()),
                image.is_subset(&nil)?,
                format!("dim Im = {}, dim nil = {}", image.dim(), nil.dim()),
            ));
            let mut bad = None;
            for _ in 0..subspaces {
                let v = sampler.subspace(&alg, 3);
                let dv = v.image_under(&m)?;
                if !dv.is_subset(&nil)? {
                    bad = Some(v);
                    break;
                }
            }
            report.push(Check::verdict(
                format!("{} maps subspaces into the nilradical", d.name()),
                bad.is_none(),
                format!("{subspaces} random subspaces"),
            ));
        }
        Err(Error::CharPUnsupported) => {
            report.push(Check::new(
                "image lies in the nilradical",
                Status::NotApplicable,
                "nilradical is computed in characteristic zero only",
            ));
        }
        Err(e) => return Err(e),
    }
    if alg.field().is_rational() && is_reduced(&alg)? {
        let space = derivation_space(&alg)?;
        report.push(Check::verdict(
            "reduced algebra has no nonzero derivations",
            space.is_empty() && m.is_zero(),
            format!("derivation space has dimension {}", space.len()),
        ));
    } else {
        report.push(Check::new(
            "reduced algebra has no nonzero derivations",
            Status::NotApplicable,
            "algebra is not reduced or not of characteristic zero",
        ));
    }
    Ok(report)
}

/// In `F_p[x]`, `D = d/dx` is nonzero but `D^p(x^m) = 0` for every `m`.
pub fn char_p_nilpotent_check(p: u64, m_max: u32) -> Result<Report> {
    let f = Field::prime(p)?;
    let alg = Algebra::commutative(f, &["x"], Vec::new())?;
    let d = Derivation::partial(&alg, "x")?;
    let x = alg.var("x")?;
    let mut report = Report::new();
    report.push(Check::verdict(format!("d/dx is nonzero on F_{p}[x]"), d.apply(&x)? == alg.one(), "D(x) = 1"));
    let mut bad = None;
    for m in 0..=m_max {
        if !d.apply_power(&x.pow(m), p as u32)?.is_zero() {
            bad = Some(m);
            break;
        }
    }
    report.push(Check::verdict(
        format!("D^{p} = 0 on F_{p}[x]"),
        bad.is_none(),
        bad.map_or(format!("D^{p}(x^m) = 0 for 0 <= m <= {m_max}"), |m| format!("fails at x^{m}")),
    ));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::joint_grading;

    const Q: Field = Field::Rational;

    fn bidegree() -> Grading {
        let a = Algebra::truncated(Q, &["x1", "x2"], &[2, 3]).unwrap();
        joint_grading(Arc::new(vec![Derivation::euler(&a, &[1, 0]).unwrap(), Derivation::euler(&a, &[0, 1]).unwrap()]))
            .unwrap()
    }

    #[test]
    fn shifted_leibniz_noncommutative() {
        let w = Algebra::noncommutative(Q, &["X", "Y"], &["YY"], None).unwrap();
        let d = Derivation::partial(&w, "X").unwrap();
        let pairs = vec![(w.parse("X*X*Y + Y").unwrap(), w.parse("X*Y*X - 2").unwrap())];
        let c = shifted_leibniz_check(&d, &Q.int(1), &Q.int(2), 2, &pairs).unwrap();
        assert_eq!(c.status, Status::Pass);
    }

    #[test]
    fn homogeneity_examples() {
        let g = bidegree();
        let a = g.algebra().clone();
        for terms in [&[(vec![1, 0], 1)][..], &[(vec![0, 0], 1)], &[(vec![1, 0], 1), (vec![0, 1], 1), (vec![0, 0], -2)]] {
            let p = OperatorPolynomial::from_ints(&a, 2, terms).unwrap();
            assert!(kernel_homogeneity_check(&p, &g).unwrap().passed());
        }
        // ξ1 + ξ2 − 2 has kernel A_(0,2) ⊕ A_(1,1).
        let p = OperatorPolynomial::from_ints(&a, 2, &[(vec![1, 0], 1), (vec![0, 1], 1), (vec![0, 0], -2)]).unwrap();
        let k = ker_op(&DiffOperator::from_polynomial(&p, g.derivations().clone()).unwrap()).unwrap();
        assert_eq!(k, a.span(&[a.parse("x2^2").unwrap(), a.parse("x1*x2").unwrap()]).unwrap());
    }

    #[test]
    fn dilation_recovery() {
        let a = Algebra::truncated(Q, &["x"], &[2]).unwrap();
        let p = OperatorPolynomial::from_ints(&a, 2, &[(vec![2, 1], 3), (vec![1, 0], -1), (vec![0, 0], 5)]).unwrap();
        let l = vec![Q.int(2), Q.ratio(-1, 3).unwrap()];
        let got = homogeneous_values_from_dilations(&p, &l).unwrap();
        for (k, v) in got.iter().enumerate() {
            assert_eq!(*v, p.homogeneous(k).eval_scalar(&l).unwrap());
        }
    }

    #[test]
    fn extremal_components() {
        let g = bidegree();
        let a = g.algebra().clone();
        let p = OperatorPolynomial::from_ints(&a, 2, &[(vec![1, 1], 1)]).unwrap();
        let r = extremal_component_check(&p, &g, &a.parse("x1 + x2^2").unwrap()).unwrap();
        assert!(r.passed(), "{r:#?}");
        let p = OperatorPolynomial::from_ints(&a, 2, &[(vec![0, 0], 1)]).unwrap();
        let r = extremal_component_check(&p, &g, &a.one()).unwrap();
        assert_eq!(r.checks[0].status, Status::HypothesisNotMet);
    }

    #[test]
    fn degree_zero_on_exp_poly() {
        let e = Algebra::exp_poly();
        let ders = Arc::new(vec![Derivation::d_dx(&e).unwrap()]);
        let mut s = Sampler::new(2);
        for c in [&[0, 1][..], &[1, 1], &[0, -1, 1]] {
            let p = OperatorPolynomial::univariate(&e, &crate::exactmath::UniPoly::from_ints(Q, c));
            let r = radical_in_degree_zero_check(&p, ders.clone(), &mut s, 15, false).unwrap();
            assert!(r.passed(), "{r:#?}");
        }
    }

    #[test]
    fn degree_zero_requires_reduced() {
        let a = Algebra::truncated(Q, &["x"], &[3]).unwrap();
        let ders = Arc::new(vec![Derivation::euler(&a, &[1]).unwrap()]);
        let p = OperatorPolynomial::from_ints(&a, 1, &[(vec![1], 1)]).unwrap();
        let r = radical_in_degree_zero_check(&p, ders, &mut Sampler::new(0), 3, false);
        assert_eq!(r.unwrap_err(), Error::NotReduced);
    }

    #[test]
    fn section_four_examples() {
        let a = Algebra::truncated(Q, &["x1", "x2"], &[2, 3]).unwrap();
        let r = derivation_image_checks(&Derivation::euler(&a, &[1, 1]).unwrap(), &mut Sampler::new(4), 5).unwrap();
        assert_eq!(r.count(Status::Pass), 2);
        let f3 = Algebra::product_of_fields(Q, 3).unwrap();
        let r = derivation_image_checks(&Derivation::zero(&f3), &mut Sampler::new(4), 5).unwrap();
        assert!(r.passed());
        assert_eq!(r.count(Status::Pass), 3);
        for p in [3, 5] {
            assert!(char_p_nilpotent_check(p, 50).unwrap().passed());
        }
    }
}
