//! Kernels of differential operators and exact radical membership.
//!
//! The radical of a subspace `V` is the set of `a` with `a^m ∈ V` for all
//! large `m`. On a finite-dimensional algebra the spans
//! `S_N = span{a^m : m ≥ N}` form a decreasing chain with `S_{N+1} = a·S_N`,
//! so the chain stabilizes within `dim A` steps at some `S∞`, and
//! `a ∈ r(V)` exactly when `S∞ ⊆ V`.

mod checks;
mod exppoly;
mod mathieu;

pub use checks::{kernel_power_radical_check, nilpotency_check, radical_annihilator_check, reduced_kernel_check};
pub use exppoly::{
    exppoly_kernel, exppoly_radical_check, ker_op_exppoly, radical_member_exppoly, scalar_polynomial,
};
pub use mathieu::{
    factor_closed_model, matrix_violation_check, ms_violation_search, ms_witness_verify, truncated_operator_matrix, word_algebra_counterexample_check, MsWitness,
    MsWitnessOutcome,
};

use serde::Serialize;

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::exactmath::{Matrix, Subspace};
use crate::weylop::DiffOperator;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    InRadical,
    NotInRadical,
}

/// Outcome of [`radical_member`] with the data that certifies it.
#[derive(Clone, Debug)]
pub struct RadicalDecision {
    pub element: Element,
    pub subspace: Subspace,
    /// `S∞`, the eventual span of the powers.
    pub stable_span: Subspace,
    /// Least `N` with `S_N = S∞`.
    pub stabilization_index: usize,
    pub verdict: Verdict,
}

impl RadicalDecision {
    pub fn in_radical(&self) -> bool {
        self.verdict == Verdict::InRadical
    }
}

/// Kernel of an operator on a finite-dimensional algebra.
pub fn ker_op(phi: &DiffOperator) -> Result<Subspace> {
    Ok(phi.matrix()?.kernel())
}

/// The chain `S_1 ⊇ S_2 ⊇ …` up to stabilization; the last entry is `S∞`.
pub fn power_span_chain(a: &Element) -> Result<Vec<Subspace>> {
    let alg = a.algebra();
    let d = alg.require_finite()?;
    let mut powers = Vec::with_capacity(d + 1);
    let mut p = a.clone();
    for _ in 0..=d {
        powers.push(p.clone());
        p = &p * a;
    }
    let left = alg.left_mult_matrix(a)?;
    let mut chain = vec![alg.span(&powers)?];
    loop {
        let last = chain.last().expect("nonempty chain");
        let next = last.image_under(&left)?;
        if next.dim() == last.dim() {
            // a·S_N ⊆ S_N, so equal dimension means equality.
            return Ok(chain);
        }
        chain.push(next);
    }
}

/// Exact decision of `a^m ∈ V for all m ≫ 0` on a finite-dimensional algebra.
pub fn radical_member(a: &Element, v: &Subspace) -> Result<RadicalDecision> {
    let d = a.algebra().require_finite()?;
    if v.ambient_dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: v.ambient_dim(),
        });
    }
    let chain = power_span_chain(a)?;
    let stable = chain.last().expect("nonempty chain").clone();
    let verdict = if stable.is_subset(v)? {
        Verdict::InRadical
    } else {
        Verdict::NotInRadical
    };
    Ok(RadicalDecision {
        element: a.clone(),
        subspace: v.clone(),
        stable_span: stable,
        stabilization_index: chain.len(),
        verdict,
    })
}

/// Least `N` with `a^m ∈ V` for every `m ≥ N`, or `None` if `a ∉ r(V)`.
pub fn radical_threshold(a: &Element, v: &Subspace) -> Result<Option<usize>> {
    let chain = power_span_chain(a)?;
    for (i, s) in chain.iter().enumerate() {
        if s.is_subset(v)? {
            return Ok(Some(i + 1));
        }
    }
    Ok(None)
}

/// `{b : ab = 0 and ba = 0}`; on commutative algebras the usual annihilator.
pub fn ann(a: &Element) -> Result<Subspace> {
    let alg = a.algebra();
    let left = ann_left(a)?;
    if alg.is_commutative() {
        return Ok(left);
    }
    left.intersection(&alg.right_mult_matrix(a)?.kernel())
}

/// `Ann_ℓ(a) = {b : ab = 0}`.
pub fn ann_left(a: &Element) -> Result<Subspace> {
    Ok(a.algebra().left_mult_matrix(a)?.kernel())
}

/// Whether `a` is a zero-divisor (or zero) of a finite-dimensional algebra.
pub fn is_zero_divisor(a: &Element) -> Result<bool> {
    Ok(!ann(a)?.is_zero() || !ann_left(a)?.is_zero() || !a.algebra().right_mult_matrix(a)?.kernel().is_zero())
}

/// Matrix of `x ↦ b·x·c`.
pub fn sandwich_matrix(b: &Element, c: &Element) -> Result<Matrix> {
    b.algebra().matrix_of_map(|x| Ok(&(b * x) * c))
}

/// Whether the algebra has no nonzero nilpotents, when this can be decided.
pub fn is_reduced(alg: &Algebra) -> Result<bool> {
    use crate::algebra::AlgebraKind;
    match alg.kind() {
        AlgebraKind::ExpPoly => Ok(true),
        // A monomial ideal is radical iff its generators are squarefree.
        AlgebraKind::Commutative { ideal, .. } => Ok(ideal.iter().all(|g| g.iter().all(|&k| k <= 1))),
        AlgebraKind::StructureConstants { .. } => Ok(crate::algebra::nilradical(alg)?.is_zero()),
        AlgebraKind::Noncommutative {
            ideal, max_word_length, ..
        } => {
            if ideal.is_empty() && max_word_length.is_none() {
                return Ok(true);
            }
            if max_word_length.is_some() {
                return Ok(false);
            }
            // If w = pq, then (qp)² contains w; if w = c^j, then c^j = w. Any
            // such candidate that is itself standard is a nonzero nilpotent.
            let standard = |c: &[usize]| !ideal.iter().any(|g| crate::algebra::contains_factor(c, g));
            for w in ideal {
                let k = w.len();
                for split in 1..k {
                    let rot: Vec<usize> = w[split..].iter().chain(&w[..split]).copied().collect();
                    if standard(&rot) {
                        return Ok(false);
                    }
                }
                for len in 1..k {
                    if k % len == 0 && w.chunks(len).all(|c| c == &w[..len]) && standard(&w[..len]) {
                        return Ok(false);
                    }
                }
            }
            Err(Error::Noncommutative)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivation::Derivation;
    use crate::exactmath::Field;
    use std::sync::Arc;

    const Q: Field = Field::Rational;

    #[test]
    fn kernel_of_euler_is_constants() {
        let a = Algebra::truncated(Q, &["x1", "x2"], &[2, 3]).unwrap();
        let d = Arc::new(vec![Derivation::euler(&a, &[1, 1]).unwrap()]);
        let phi = DiffOperator::zero(&a, d).unwrap().der_like(0);
        let k = ker_op(&phi).unwrap();
        assert_eq!(k, a.span(&[a.one()]).unwrap());
        assert_eq!(ker_op(&phi.identity_like()).unwrap().dim(), 0);
        assert_eq!(ker_op(&phi.sub(&phi).unwrap()).unwrap().dim(), 6);
    }

    #[test]
    fn idempotent_not_in_radical_of_complement() {
        let a = Algebra::product_of_fields(Q, 2).unwrap();
        // (1,0) = one − e2, V = span{(0,1)} = span{e2}.
        let e = a.parse("one - e2").unwrap();
        let v = a.span(&[a.parse("e2").unwrap()]).unwrap();
        let dec = radical_member(&e, &v).unwrap();
        assert_eq!(dec.verdict, Verdict::NotInRadical);
        assert_eq!(dec.stable_span, a.span(&[e.clone()]).unwrap());
        assert!(radical_member(&e, &a.span(&[e.clone()]).unwrap()).unwrap().in_radical());
    }

    #[test]
    fn nilpotent_in_every_radical() {
        let a = Algebra::truncated(Q, &["x"], &[4]).unwrap();
        let x = a.var("x").unwrap();
        let zero = Subspace::zero(Q, 4);
        let dec = radical_member(&x, &zero).unwrap();
        assert!(dec.in_radical());
        assert_eq!(dec.stabilization_index, 4);
        assert_eq!(radical_threshold(&x, &zero).unwrap(), Some(4));
    }

    #[test]
    fn annihilators() {
        let a = Algebra::truncated(Q, &["x"], &[2]).unwrap();
        assert_eq!(ann(&a.zero()).unwrap().dim(), 2);
        assert_eq!(ann(&a.one()).unwrap().dim(), 0);
        assert_eq!(ann(&a.var("x").unwrap()).unwrap(), a.span(&[a.var("x").unwrap()]).unwrap());
    }

    #[test]
    fn matrix_annihilators_are_one_sided() {
        let m = Algebra::matrices(Q, 2).unwrap();
        let e12 = m.parse("E12").unwrap();
        // E12·b = 0 iff b's second row vanishes; b·E12 = 0 iff b's first column vanishes.
        assert_eq!(ann_left(&e12).unwrap().dim(), 2);
        assert_eq!(ann(&e12).unwrap().dim(), 1);
    }

    #[test]
    fn reducedness() {
        assert!(is_reduced(&Algebra::product_of_fields(Q, 3).unwrap()).unwrap());
        assert!(!is_reduced(&Algebra::truncated(Q, &["x"], &[2]).unwrap()).unwrap());
        assert!(is_reduced(&Algebra::exp_poly()).unwrap());
        let w = Algebra::noncommutative(Q, &["X", "Y"], &["YY"], None).unwrap();
        assert!(!is_reduced(&w).unwrap());
    }
}
