//! Mathieu-subspace witnesses: `a^m ∈ V` for all `m ≥ 1` should force
//! `b·a^m·c ∈ V` for all large `m`.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;
use serde_json::json;

use super::{power_span_chain, sandwich_matrix};
use crate::algebra::{Algebra, AlgebraDescriptor, AlgebraKind, Element, Monomial};
use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::exactmath::{Field, Matrix, Subspace};
use crate::report::{Check, Report};
use crate::sample::Sampler;
use crate::weylop::{DiffOperator, OperatorPolynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MsWitnessOutcome {
    ViolationConfirmed,
    NoViolation,
}

#[derive(Clone, Debug)]
pub struct MsWitness {
    pub outcome: MsWitnessOutcome,
    /// Whether every power of `a` lies in `V` (up to the horizon, if any).
    pub premise_holds: bool,
    /// A power `m` with `b·a^m·c ∉ V`, when a violation is confirmed.
    pub violating_power: Option<usize>,
}

/// Checks the witness `(a, b, c)` against `V`.
///
/// With `horizon = None` the eventual semantics is decided exactly: the
/// premise is `span{a^m : m ≥ 1} ⊆ V`, and the conclusion fails iff
/// `b·S∞·c ⊄ V` where `S∞` is the stabilized power span. With
/// `horizon = Some(M)` only `1 ≤ m ≤ M` is considered: the premise is
/// `a^m ∈ V` for those `m` and a violation is any such `m` with `b·a^m·c ∉ V`.
/// The bounded form is what a truncated model of an infinite-dimensional
/// algebra can certify.
pub fn ms_witness_verify(
    v: &Subspace,
    a: &Element,
    b: &Element,
    c: &Element,
    horizon: Option<usize>,
) -> Result<MsWitness> {
    let alg = a.algebra();
    let d = alg.require_finite()?;
    if v.ambient_dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: v.ambient_dim(),
        });
    }
    let in_v = |e: &Element| -> Result<bool> { v.contains(&alg.coords(e)?) };
    let no = |premise_holds| MsWitness {
        outcome: MsWitnessOutcome::NoViolation,
        premise_holds,
        violating_power: None,
    };
    match horizon {
        Some(max) => {
            let mut p = a.clone();
            let mut first_violation = None;
            for m in 1..=max {
                if !in_v(&p)? {
                    return Ok(no(false));
                }
                if first_violation.is_none() && !in_v(&(&(b * &p) * c))? {
                    first_violation = Some(m);
                }
                p = &p * a;
            }
            Ok(match first_violation {
                Some(m) => MsWitness {
                    outcome: MsWitnessOutcome::ViolationConfirmed,
                    premise_holds: true,
                    violating_power: Some(m),
                },
                None => no(true),
            })
        }
        None => {
            let chain = power_span_chain(a)?;
            if !chain[0].is_subset(v)? {
                return Ok(no(false));
            }
            let stable = chain.last().expect("nonempty chain");
            let t = stable.image_under(&sandwich_matrix(b, c)?)?;
            if t.is_subset(v)? {
                return Ok(no(true));
            }
            let n = chain.len();
            let mut p = a.pow(n as u32);
            for m in n..=n + d {
                if !in_v(&(&(b * &p) * c))? {
                    return Ok(MsWitness {
                        outcome: MsWitnessOutcome::ViolationConfirmed,
                        premise_holds: true,
                        violating_power: Some(m),
                    });
                }
                p = &p * a;
            }
            Err(Error::Internal("sandwich image leaves V but no power does".into()))
        }
    }
}

/// Random search for a witness against `V` being a Mathieu subspace. The
/// element `a` is drawn from `V` itself (the premise needs `a ∈ V`).
pub fn ms_violation_search(
    v: &Subspace,
    algebra: &Algebra,
    sampler: &mut Sampler,
    trials: usize,
) -> Result<Option<(Element, Element, Element, MsWitness)>> {
    for _ in 0..trials {
        let a = sampler.element_of(algebra, v);
        let b = sampler.element(algebra);
        let c = sampler.element(algebra);
        let w = ms_witness_verify(v, &a, &b, &c, None)?;
        if w.outcome == MsWitnessOutcome::ViolationConfirmed {
            return Ok(Some((a, b, c, w)));
        }
    }
    Ok(None)
}

/// Matrix on `target` of the operator `phi` defined on a larger presentation
/// with the same monomials: each basis monomial is lifted, `phi` is applied
/// there, and the result is projected back. This realizes operators such as
/// `I − ℓ_X ∂/∂X` on word-length truncations, where `∂/∂X` itself is not a
/// derivation.
pub fn truncated_operator_matrix(target: &Algebra, phi: &DiffOperator) -> Result<Matrix> {
    if target.field() != phi.algebra().field() {
        return Err(Error::FieldMismatch(target.field().to_string(), phi.algebra().field().to_string()));
    }
    target.matrix_of_map(|b| Ok(target.project(&phi.apply(&phi.algebra().project(b))?)))
}

/// The monomial quotient of a word algebra that keeps exactly the words
/// occurring as factors of the words in the supports of `elements`. The
/// factor set is closed under taking factors, so its complement is spanned
/// by a two-sided monomial ideal: generated by the minimal non-factors
/// together with the length bound.
pub fn factor_closed_model(alg: &Algebra, elements: &[Element]) -> Result<Algebra> {
    let AlgebraKind::Noncommutative { variables, ideal, .. } = alg.kind() else {
        return Err(Error::BadDescriptor("factor-closed models are built from word algebras".into()));
    };
    let mut factors: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut longest = 0;
    for e in elements {
        for m in e.terms().keys() {
            let Monomial::Word(w) = m else { continue };
            longest = longest.max(w.len());
            for i in 0..=w.len() {
                for j in i..=w.len() {
                    factors.insert(w[i..j].to_vec());
                }
            }
        }
    }
    let mut gens = ideal.clone();
    for f in factors.iter().filter(|f| f.len() < longest) {
        for x in 0..variables.len() {
            let mut w = f.clone();
            w.push(x);
            if !factors.contains(&w) && factors.contains(&w[1..]) {
                gens.push(w);
            }
        }
    }
    Algebra::new(AlgebraDescriptor {
        field: alg.field(),
        kind: AlgebraKind::Noncommutative {
            variables: variables.clone(),
            ideal: gens,
            max_word_length: Some(longest),
        },
    })
}

/// The word algebra `ℚ⟨X,Y⟩/(Y²)` with `D = ∂/∂X`, `P(ξ) = 1 − Xξ` and
/// `f = XY`: every power of `f` lies in `Ker P(D)` while
/// `P(D)(X f^m) = −X f^m ≠ 0`, so `Ker P(D)` is not a Mathieu subspace.
///
/// The identities are checked symbolically for `1 ≤ m ≤ m_max`, then again
/// through the finite-dimensional pipeline on the factor-closed model of the
/// words `f^m` and `X f^m`.
pub fn word_algebra_counterexample_check(m_max: usize) -> Result<Report> {
    let q = Field::Rational;
    let full = Algebra::noncommutative(q, &["X", "Y"], &["YY"], None)?;
    let ders = Arc::new(vec![Derivation::partial(&full, "X")?]);
    let p = OperatorPolynomial::parse_terms(&full, 1, &[(vec![0], "1"), (vec![1], "-X")])?;
    let phi = DiffOperator::from_polynomial(&p, ders)?;
    let x = full.var("X")?;
    let f = full.parse("X*Y")?;
    let mut report = Report::new();

    let mut bad_kernel = None;
    let mut bad_shift = None;
    let mut vanished = None;
    for m in 1..=m_max as u32 {
        let fm = f.pow(m);
        if fm.is_zero() {
            vanished.get_or_insert(m);
        }
        if !phi.apply(&fm)?.is_zero() {
            bad_kernel.get_or_insert(m);
        }
        let xfm = &x * &fm;
        if xfm.is_zero() || phi.apply(&xfm)? != -&xfm {
            bad_shift.get_or_insert(m);
        }
    }
    let range = format!("1 <= m <= {m_max}");
    report.push(Check::verdict("P(D)(f^m) = 0", bad_kernel.is_none(), match bad_kernel {
        None => range.clone(),
        Some(m) => format!("fails at m = {m}"),
    }));
    report.push(Check::verdict("P(D)(X f^m) = -X f^m != 0", bad_shift.is_none(), match bad_shift {
        None => range.clone(),
        Some(m) => format!("fails at m = {m}"),
    }));
    report.push(Check::verdict("f = XY is not nilpotent", vanished.is_none(), match vanished {
        None => format!("f^m != 0 for {range}"),
        Some(m) => format!("f^{m} = 0"),
    }));

    let mut words = Vec::new();
    for m in 1..=m_max as u32 {
        words.push(f.pow(m));
        words.push(&x * &f.pow(m));
    }
    let trunc = factor_closed_model(&full, &words)?;
    let v = truncated_operator_matrix(&trunc, &phi)?.kernel();
    let (ft, xt) = (trunc.parse("X*Y")?, trunc.var("X")?);
    let mut disagreement = None;
    for m in 1..=m_max as u32 {
        let fm = ft.pow(m);
        let in_kernel = v.contains(&trunc.coords(&fm)?)?;
        let shifted_in = v.contains(&trunc.coords(&(&xt * &fm))?)?;
        if !in_kernel || shifted_in {
            disagreement.get_or_insert(m);
        }
    }
    report.push(Check::verdict(
        "truncated kernel agrees with the symbolic computation",
        disagreement.is_none(),
        format!(
            "factor-closed model of dim {}, dim Ker = {}{}",
            trunc.dim().unwrap_or(0),
            v.dim(),
            disagreement.map_or(String::new(), |m| format!("; differs at m = {m}"))
        ),
    ));

    // Expected violation: the check passes when the witness is confirmed.
    let w = ms_witness_verify(&v, &ft, &xt, &trunc.one(), Some(m_max))?;
    report.push(Check::verdict(
        "Ker P(D) is not a Mathieu subspace (witness a = XY, b = X, c = 1)",
        w.outcome == MsWitnessOutcome::ViolationConfirmed,
        format!(
            "powers m <= {m_max} in the model: premise {}, first violation at m = {}",
            if w.premise_holds { "holds" } else { "fails" },
            w.violating_power.map_or("none".into(), |m| m.to_string())
        ),
    ));
    // In the model f is nilpotent, so the eventual (m ≫ 0) reading has
    // nothing to violate; the exact procedure must agree.
    let exact = ms_witness_verify(&v, &ft, &xt, &trunc.one(), None)?;
    report.push(Check::verdict(
        "truncation is eventually vacuous",
        exact.outcome == MsWitnessOutcome::NoViolation && ft.pow(m_max as u32 + 1).pow(2).is_zero(),
        "f is nilpotent once long words are killed, so only the bounded witness is meaningful there",
    ));
    Ok(report)
}

/// A genuine eventual violation on a finite-dimensional algebra: in
/// `M_2(ℚ)` with `V = ℚ·E11`, the idempotent `E11` has all powers in `V` but
/// `E21·E11^m = E21 ∉ V`.
pub fn matrix_violation_check() -> Result<Check> {
    let m = Algebra::matrices(Field::Rational, 2)?;
    let e11 = m.parse("one - E22")?;
    let v = m.span(&[e11.clone()])?;
    let w = ms_witness_verify(&v, &e11, &m.parse("E21")?, &m.one(), None)?;
    Ok(Check::verdict(
        "span{E11} in M_2(Q) is not a Mathieu subspace",
        w.outcome == MsWitnessOutcome::ViolationConfirmed,
        format!("exact eventual check, violating power {}", w.violating_power.map_or("none".into(), |m| m.to_string())),
    )
    .with_counterexample(json!({"a": "E11", "b": "E21", "c": "one"})))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    #[test]
    fn whole_space_never_violated() {
        let a = Algebra::truncated(Field::Rational, &["x"], &[3]).unwrap();
        let v = Subspace::full(Field::Rational, 3);
        let x = a.var("x").unwrap();
        for h in [None, Some(5)] {
            let w = ms_witness_verify(&v, &x, &x, &a.one(), h).unwrap();
            assert_eq!(w.outcome, MsWitnessOutcome::NoViolation);
        }
    }

    #[test]
    fn counterexample_small() {
        let r = word_algebra_counterexample_check(3).unwrap();
        assert!(r.passed(), "{r:#?}");
        assert_eq!(r.count(Status::Pass), 6);
    }

    #[test]
    fn matrix_violation() {
        assert_eq!(matrix_violation_check().unwrap().status, Status::Pass);
    }

    #[test]
    fn premise_failure_is_no_violation() {
        let m = Algebra::matrices(Field::Rational, 2).unwrap();
        let v = m.span(&[m.parse("E12").unwrap()]).unwrap();
        let w = ms_witness_verify(&v, &m.one(), &m.one(), &m.one(), None).unwrap();
        assert!(!w.premise_holds);
        assert_eq!(w.outcome, MsWitnessOutcome::NoViolation);
    }
}
