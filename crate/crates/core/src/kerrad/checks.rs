//! Consequences of the power-kernel identity that are decided with
//! [`radical_member`](super::radical_member).

use std::sync::Arc;

use serde_json::json;

use super::{ann, is_reduced, is_zero_divisor, ker_op, radical_member, radical_threshold};
use crate::algebra::{nilradical, Element, Nilpotency};
use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::report::{Check, Report, Status};
use crate::sample::Sampler;
use crate::weylop::{eval_at_gradient, gradient, DiffOperator, OperatorPolynomial};

fn tally(name: &str, applicable: bool, why_not: &str, members: usize, bad: Vec<serde_json::Value>) -> Check {
    if !applicable {
        return Check::new(name, Status::NotApplicable, why_not);
    }
    if bad.is_empty() {
        Check::pass(name, format!("{members} radical members checked"))
    } else {
        Check::fail(name, format!("{} of {members} radical members violate it", bad.len()))
            .with_counterexample(serde_json::Value::Array(bad))
    }
}

/// For sampled `u ∈ r(Ker P(D))` on a commutative finite-dimensional
/// ℚ-algebra, with `a_0 = P(0)`:
///
/// 1. `u ∈ r(Ann(a_0))`, i.e. `a_0 u^m = 0` for all large `m`;
/// 2. if `a_0` is not a zero-divisor, `u` is nilpotent, and conversely every
///    nilpotent lies in `r(Ker P(D))`;
/// 3. if `a_0 = 0`, `P_d(∇(u^N)) = 0` once all `u^m` with `m ≥ N` are in the
///    kernel; for a single derivation whose top coefficient is not a
///    zero-divisor, `Du` is nilpotent.
pub fn radical_annihilator_check(
    p: &OperatorPolynomial,
    ders: Arc<Vec<Derivation>>,
    sampler: &mut Sampler,
    samples: usize,
) -> Result<Report> {
    let alg = p.algebra().clone();
    if !alg.is_commutative() {
        return Err(Error::Noncommutative);
    }
    if !alg.field().is_rational() {
        return Err(Error::CharPUnsupported);
    }
    alg.require_finite()?;
    let d = p.degree().unwrap_or(0);
    let kernel = ker_op(&DiffOperator::from_polynomial(p, ders.clone())?)?;
    let a0 = p.constant();
    let ann_a0 = ann(&a0)?;
    let nil = nilradical(&alg)?;
    let a0_regular = !is_zero_divisor(&a0)?;
    let top = if ders.len() == 1 {
        Some(p.terms().get(&vec![d as u32]).cloned().unwrap_or_else(|| alg.zero()))
    } else {
        None
    };
    let top_regular = match &top {
        Some(c) => !is_zero_divisor(c)?,
        None => false,
    };

    let mut points: Vec<Element> = vec![alg.zero()];
    points.extend(alg.basis_elements()?);
    points.extend(alg.subspace_elements(&nil)?);
    for _ in 0..samples {
        points.push(sampler.element(&alg));
    }

    let (mut members, mut bad1, mut bad2, mut bad3, mut bad3n) = (0, vec![], vec![], vec![], vec![]);
    for u in &points {
        let Some(n) = radical_threshold(u, &kernel)? else { continue };
        members += 1;
        if !radical_member(u, &ann_a0)?.in_radical() {
            bad1.push(json!({"u": u.to_string(), "a0": a0.to_string()}));
        }
        if a0_regular && !nil.contains(&alg.coords(u)?)? {
            bad2.push(json!({"u": u.to_string()}));
        }
        if a0.is_zero() {
            let v = u.pow(n as u32);
            let value = eval_at_gradient(&p.homogeneous(d), &gradient(&v, &ders)?)?;
            if !value.is_zero() {
                bad3.push(json!({"u": u.to_string(), "N": n, "P_d(grad u^N)": value.to_string()}));
            }
            if top_regular {
                let du = ders[0].apply(u)?;
                if !nil.contains(&alg.coords(&du)?)? {
                    bad3n.push(json!({"u": u.to_string(), "Du": du.to_string()}));
                }
            }
        }
    }

    let mut report = Report::new();
    report.push(tally("radical lies in r(Ann(a0))", true, "", members, bad1));
    report.push(tally(
        "regular a0: radical members are nilpotent",
        a0_regular,
        "a0 is zero or a zero-divisor",
        members,
        bad2,
    ));
    if a0_regular {
        let mut missing = Vec::new();
        for e in alg.subspace_elements(&nil)? {
            if !radical_member(&e, &kernel)?.in_radical() {
                missing.push(json!({"u": e.to_string()}));
            }
        }
        report.push(tally(
            "regular a0: nilradical lies in the radical",
            true,
            "",
            nil.dim(),
            missing,
        ));
    }
    report.push(tally(
        "a0 = 0: P_d vanishes on gradients of large powers",
        a0.is_zero(),
        "a0 is nonzero",
        members,
        bad3,
    ));
    report.push(tally(
        "a0 = 0, one derivation, regular top coefficient: Du is nilpotent",
        a0.is_zero() && top_regular,
        "hypotheses not met",
        members,
        bad3n,
    ));
    Ok(report)
}

fn require_reduced_char0(alg: &crate::algebra::Algebra) -> Result<()> {
    if !alg.field().is_rational() {
        return Err(Error::CharPUnsupported);
    }
    if !is_reduced(alg)? {
        return Err(Error::NotReduced);
    }
    Ok(())
}

/// On a reduced algebra of characteristic zero: if `D^r(a^m) = 0` for all
/// `1 ≤ m ≤ 2^{r−1}`, then `Da = 0`.
pub fn kernel_power_radical_check(d: &Derivation, a: &Element, r: u32) -> Result<Check> {
    require_reduced_char0(d.algebra())?;
    if r == 0 {
        return Err(Error::BadDescriptor("r must be at least 1".into()));
    }
    let name = format!("D^{r} kills a^m for m <= 2^{} implies Da = 0", r - 1);
    let bound = 1u32 << (r - 1);
    for m in 1..=bound {
        if !d.apply_power(&a.pow(m), r)?.is_zero() {
            return Ok(Check::new(name, Status::HypothesisNotMet, format!("D^{r}(a^{m}) != 0 for a = {a}")));
        }
    }
    let da = d.apply(a)?;
    Ok(Check::verdict(name, da.is_zero(), format!("a = {a}, Da = {da}")))
}

/// On a finite-dimensional reduced algebra of characteristic zero:
/// `r(Ker D^r) = r(Ker D)` pointwise on samples and basis vectors, and
/// `Ker D ⊆ r(Ker D^r)` exactly.
pub fn reduced_kernel_check(d: &Derivation, r: u32, sampler: &mut Sampler, samples: usize) -> Result<Report> {
    let alg = d.algebra().clone();
    require_reduced_char0(&alg)?;
    let m = d.matrix_of()?;
    let k1 = m.kernel();
    let kr = m.pow(r)?.kernel();
    let mut points = alg.basis_elements()?;
    for _ in 0..samples {
        points.push(sampler.element(&alg));
    }
    let mut bad = Vec::new();
    for u in &points {
        let a = radical_member(u, &kr)?.in_radical();
        let b = radical_member(u, &k1)?.in_radical();
        if a != b {
            bad.push(json!({"u": u.to_string(), "in r(Ker D^r)": a, "in r(Ker D)": b}));
        }
    }
    let mut report = Report::new();
    report.push(if bad.is_empty() {
        Check::pass(format!("r(Ker D^{r}) = r(Ker D)"), format!("{} points agree", points.len()))
    } else {
        Check::fail(format!("r(Ker D^{r}) = r(Ker D)"), format!("{} points differ", bad.len()))
            .with_counterexample(serde_json::Value::Array(bad))
    });
    let mut outside = None;
    for e in alg.subspace_elements(&k1)? {
        if !radical_member(&e, &kr)?.in_radical() {
            outside = Some(e);
            break;
        }
    }
    report.push(Check::verdict(
        format!("Ker D lies in r(Ker D^{r})"),
        outside.is_none(),
        outside.map_or(format!("dim Ker D = {}", k1.dim()), |e| format!("{e} escapes")),
    ));
    Ok(report)
}

/// Nilpotency test used by several suites: `Yes` or a failure detail.
pub fn nilpotency_check(name: &str, e: &Element, budget: u32) -> Check {
    match e.is_nilpotent(budget) {
        Nilpotency::Yes(k) => Check::pass(name, format!("{e} has nilpotency index {k}")),
        Nilpotency::No => Check::fail(name, format!("{e} is not nilpotent")),
        Nilpotency::Unknown => Check::new(name, Status::UnknownBudget, format!("undecided within {budget} powers")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::exactmath::Field;

    const Q: Field = Field::Rational;

    #[test]
    fn regular_constant_term() {
        let a = Algebra::truncated(Q, &["x1", "x2"], &[2, 3]).unwrap();
        let ders = Arc::new(vec![Derivation::euler(&a, &[1, 1]).unwrap()]);
        let p = OperatorPolynomial::from_ints(&a, 1, &[(vec![0], 1), (vec![1], -2), (vec![2], 1)]).unwrap();
        let r = radical_annihilator_check(&p, ders, &mut Sampler::new(5), 30).unwrap();
        assert!(r.passed(), "{r:#?}");
        assert_eq!(r.checks[1].status, Status::Pass);
    }

    #[test]
    fn zero_constant_term() {
        let a = Algebra::truncated(Q, &["x"], &[4]).unwrap();
        let ders = Arc::new(vec![Derivation::euler(&a, &[1]).unwrap()]);
        let p = OperatorPolynomial::from_ints(&a, 1, &[(vec![2], 1)]).unwrap();
        let r = radical_annihilator_check(&p, ders, &mut Sampler::new(6), 30).unwrap();
        assert!(r.passed(), "{r:#?}");
        assert_eq!(r.checks[2].status, Status::Pass);
        assert_eq!(r.checks[3].status, Status::Pass);
    }

    #[test]
    fn exp_poly_kernel_power() {
        let e = Algebra::exp_poly();
        let d = Derivation::d_dx(&e).unwrap();
        assert_eq!(kernel_power_radical_check(&d, &e.int(3), 2).unwrap().status, Status::Pass);
        let c = kernel_power_radical_check(&d, &e.parse("x").unwrap(), 2).unwrap();
        assert_eq!(c.status, Status::HypothesisNotMet);
        let nonreduced = Algebra::truncated(Q, &["x"], &[2]).unwrap();
        let z = Derivation::zero(&nonreduced);
        assert_eq!(kernel_power_radical_check(&z, &nonreduced.one(), 1), Err(Error::NotReduced));
    }

    #[test]
    fn product_of_fields_kernels() {
        let a = Algebra::product_of_fields(Q, 3).unwrap();
        let r = reduced_kernel_check(&Derivation::zero(&a), 3, &mut Sampler::new(1), 10).unwrap();
        assert!(r.passed());
    }
}
