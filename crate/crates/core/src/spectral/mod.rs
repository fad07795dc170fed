//! Gradings of an algebra by generalized eigenvalues of commuting derivations.

mod checks;
mod extremal;

pub use checks::{
    char_p_nilpotent_check, derivation_image_checks, extremal_component_check, homogeneous_values_from_dilations,
    kernel_homogeneity_check, radical_in_degree_zero_check, shifted_leibniz_check,
};
pub use extremal::{extremality_certificate, extremal_witness_search, find_extremal, is_extremal, weights_to_json};

use std::sync::Arc;

use crate::algebra::{Algebra, Element};
use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::exactmath::{Matrix, Scalar, Subspace};
use crate::report::{Check, Report};

/// `A_λ = Ker (D − λ)^k` for each eigenvalue `λ`, where `k` is the
/// multiplicity of `λ` in the minimal polynomial. Sorted by `λ`.
pub fn generalized_eigenspaces(d: &Derivation) -> Result<Vec<(Scalar, Subspace)>> {
    let m = d.matrix_of()?;
    let roots = m.minimal_polynomial()?.split()?;
    let dim = m.rows();
    let mut out = Vec::new();
    let mut total = 0;
    for (lambda, mult) in roots {
        let space = m.shift(&lambda)?.pow(mult as u32)?.kernel();
        total += space.dim();
        out.push((lambda, space));
    }
    if total != dim {
        return Err(Error::Internal(format!("eigenspace dimensions sum to {total}, not {dim}")));
    }
    Ok(out)
}

/// `A = ⊕ A_λ` with `λ ∈ F^n` for a commuting tuple of derivations.
#[derive(Clone, Debug)]
pub struct Grading {
    algebra: Algebra,
    derivations: Arc<Vec<Derivation>>,
    components: Vec<(Vec<Scalar>, Subspace)>,
}

/// Joint generalized eigenspaces `A_λ = ⋂_i A^{(i)}_{λ_i}`; only nonzero
/// components are kept.
pub fn joint_grading(ders: Arc<Vec<Derivation>>) -> Result<Grading> {
    let alg = match ders.first() {
        Some(d) => d.algebra().clone(),
        None => return Err(Error::BadDescriptor("empty derivation tuple".into())),
    };
    for (i, a) in ders.iter().enumerate() {
        for b in &ders[i + 1..] {
            if !a.commutes_with(b)? {
                return Err(Error::NonCommutingTuple);
            }
        }
    }
    let dim = alg.require_finite()?;
    let mut comps = vec![(Vec::new(), Subspace::full(alg.field(), dim))];
    for d in ders.iter() {
        let eig = generalized_eigenspaces(d)?;
        let mut next = Vec::new();
        for (w, s) in &comps {
            for (lambda, e) in &eig {
                let i = s.intersection(e)?;
                if i.dim() > 0 {
                    let mut w2 = w.clone();
                    w2.push(lambda.clone());
                    next.push((w2, i));
                }
            }
        }
        comps = next;
    }
    let g = Grading {
        algebra: alg,
        derivations: ders,
        components: comps,
    };
    let total: usize = g.components.iter().map(|(_, s)| s.dim()).sum();
    if total != dim {
        return Err(Error::Internal(format!("joint components sum to dimension {total}, not {dim}")));
    }
    Ok(g)
}

impl Grading {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn derivations(&self) -> &Arc<Vec<Derivation>> {
        &self.derivations
    }

    pub fn arity(&self) -> usize {
        self.derivations.len()
    }

    pub fn components(&self) -> &[(Vec<Scalar>, Subspace)] {
        &self.components
    }

    pub fn weights(&self) -> Vec<Vec<Scalar>> {
        self.components.iter().map(|(w, _)| w.clone()).collect()
    }

    pub fn component(&self, weight: &[Scalar]) -> Option<&Subspace> {
        self.components.iter().find(|(w, _)| w == weight).map(|(_, s)| s)
    }

    fn component_or_zero(&self, weight: &[Scalar]) -> Subspace {
        self.component(weight)
            .cloned()
            .unwrap_or_else(|| Subspace::zero(self.algebra.field(), self.dim()))
    }

    fn dim(&self) -> usize {
        self.algebra.dim().expect("graded algebras are finite-dimensional")
    }

    /// `A_0` (the zero subspace if 0 is not a weight).
    pub fn zero_component(&self) -> Subspace {
        let zero = vec![self.algebra.field().zero(); self.arity()];
        self.component_or_zero(&zero)
    }

    /// Sum of the components whose weights satisfy `keep`.
    pub fn sum_of(&self, keep: impl Fn(&[Scalar]) -> bool) -> Result<Subspace> {
        let mut acc = Subspace::zero(self.algebra.field(), self.dim());
        for (w, s) in &self.components {
            if keep(w) {
                acc = acc.sum(s)?;
            }
        }
        Ok(acc)
    }

    /// Homogeneous components `u = Σ u_λ`, omitting zero ones.
    pub fn decompose(&self, u: &Element) -> Result<Vec<(Vec<Scalar>, Element)>> {
        let coords = self.algebra.coords(u)?;
        let mut columns = Vec::new();
        let mut owner = Vec::new();
        for (k, (_, s)) in self.components.iter().enumerate() {
            for b in s.basis() {
                columns.push(b.clone());
                owner.push(k);
            }
        }
        let m = Matrix::from_columns(self.algebra.field(), self.dim(), &columns)?;
        let x = m.solve(&coords)?.ok_or_else(|| Error::Internal("grading does not span".into()))?;
        let f = self.algebra.field();
        let mut parts = vec![vec![f.zero(); self.dim()]; self.components.len()];
        for ((c, col), &k) in x.iter().zip(&columns).zip(&owner) {
            for (p, v) in parts[k].iter_mut().zip(col) {
                *p = &*p + &(c * v);
            }
        }
        let mut out = Vec::new();
        for ((w, _), p) in self.components.iter().zip(parts) {
            let e = self.algebra.from_coords(&p)?;
            if !e.is_zero() {
                out.push((w.clone(), e));
            }
        }
        Ok(out)
    }

    /// Direct sum, `D_i`-invariance and `A_λ A_μ ⊆ A_{λ+μ}`.
    pub fn invariants_check(&self) -> Result<Report> {
        let alg = &self.algebra;
        let mut report = Report::new();
        let columns: Vec<Vec<Scalar>> = self.components.iter().flat_map(|(_, s)| s.basis().to_vec()).collect();
        let rank = Matrix::from_columns(alg.field(), self.dim(), &columns)?.rank();
        report.push(Check::verdict(
            "grading is a direct sum",
            rank == self.dim() && columns.len() == self.dim(),
            format!("{} components, dims sum to {}, rank {rank}", self.components.len(), columns.len()),
        ));

        let mut escaped = None;
        'inv: for (w, s) in &self.components {
            for d in self.derivations.iter() {
                for v in alg.subspace_elements(s)? {
                    if !s.contains(&alg.coords(&d.apply(&v)?)?)? {
                        escaped = Some(format!("{} moves {v} out of weight {}", d.name(), fmt_weight(w)));
                        break 'inv;
                    }
                }
            }
        }
        report.push(Check::verdict(
            "components are invariant under each derivation",
            escaped.is_none(),
            escaped.unwrap_or_else(|| "all basis vectors stay in their component".into()),
        ));

        let mut broken = None;
        'mul: for (w1, s1) in &self.components {
            for (w2, s2) in &self.components {
                let sum: Vec<Scalar> = w1.iter().zip(w2).map(|(a, b)| a + b).collect();
                let target = self.component_or_zero(&sum);
                for v in alg.subspace_elements(s1)? {
                    for u in alg.subspace_elements(s2)? {
                        if !target.contains(&alg.coords(&(&v * &u))?)? {
                            broken = Some(format!("{v} * {u} not in weight {}", fmt_weight(&sum)));
                            break 'mul;
                        }
                    }
                }
            }
        }
        report.push(Check::verdict(
            "A_l * A_m lies in A_(l+m)",
            broken.is_none(),
            broken.unwrap_or_else(|| "all basis pairs".into()),
        ));
        Ok(report)
    }
}

pub fn fmt_weight(w: &[Scalar]) -> String {
    format!("({})", w.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(","))
}
