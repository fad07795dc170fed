//! Derivations of the supported algebras: construction, validation, the
//! Leibniz extension, matrices, and classification.

use std::collections::BTreeMap;

use crate::algebra::{Algebra, AlgebraKind, Element, Monomial};
use crate::error::{Error, Result};
use crate::exactmath::{Matrix, Scalar, Subspace, UniPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Definition {
    /// Images of the generators (variables); extended by the Leibniz rule.
    Images(Vec<Element>),
    /// Column `j` holds the coordinates of `D(e_j)`.
    Matrix(Matrix),
    /// `g · d/dx` on exponential polynomials.
    ExpPoly(Element),
}

/// A validated derivation of an algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    algebra: Algebra,
    name: String,
    def: Definition,
}

/// Three-valued answer for properties that may exceed a search budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl Tri {
    fn from_bool(b: bool) -> Tri {
        if b {
            Tri::Yes
        } else {
            Tri::No
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub nilpotent: Tri,
    /// Least `k` with `D^k = 0`, when nilpotent.
    pub nilpotency_index: Option<u32>,
    pub locally_nilpotent: Tri,
    pub locally_finite: Tri,
    pub algebraic: Tri,
    pub minimal_polynomial: Option<UniPoly>,
}

/// Default orbit-dimension budget for infinite-dimensional classification.
pub const DEFAULT_ORBIT_BUDGET: usize = 64;

impl Derivation {
    /// Derivation of a polynomial-type quotient from generator images, given
    /// by variable name; unlisted variables map to zero.
    pub fn from_images(algebra: &Algebra, images: &[(&str, Element)]) -> Result<Derivation> {
        let vars = algebra.variables();
        let mut imgs = vec![algebra.zero(); vars.len()];
        for (name, e) in images {
            if e.algebra() != algebra {
                return Err(Error::AlgebraMismatch);
            }
            let i = vars
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
            imgs[i] = e.clone();
        }
        match algebra.kind() {
            AlgebraKind::Commutative { .. } | AlgebraKind::Noncommutative { .. } => {
                let d = Derivation {
                    algebra: algebra.clone(),
                    name: "D".into(),
                    def: Definition::Images(imgs),
                };
                d.check_ideal()?;
                Ok(d)
            }
            AlgebraKind::StructureConstants { .. } => {
                // Basis labels double as generators: the images are the columns.
                let cols = imgs.iter().map(|e| algebra.coords(e)).collect::<Result<Vec<_>>>()?;
                let m = Matrix::from_columns(algebra.field(), vars.len(), &cols)?;
                Derivation::from_matrix(algebra, m)
            }
            AlgebraKind::ExpPoly => Derivation::exp_poly(algebra, imgs[0].clone()),
        }
    }

    /// Parses `name → expression` images.
    pub fn from_image_strings(algebra: &Algebra, images: &[(&str, &str)]) -> Result<Derivation> {
        let parsed = images
            .iter()
            .map(|(v, t)| Ok((*v, algebra.parse(t)?)))
            .collect::<Result<Vec<_>>>()?;
        Derivation::from_images(algebra, &parsed)
    }

    /// Derivation of a finite-dimensional algebra from its matrix.
    pub fn from_matrix(algebra: &Algebra, m: Matrix) -> Result<Derivation> {
        let d = algebra.require_finite()?;
        if m.rows() != d || m.cols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: m.rows().max(m.cols()),
            });
        }
        if m.field() != algebra.field() {
            return Err(Error::FieldMismatch(algebra.field().to_string(), m.field().to_string()));
        }
        let der = Derivation {
            algebra: algebra.clone(),
            name: "D".into(),
            def: Definition::Matrix(m),
        };
        if !der.apply(&algebra.one())?.is_zero() {
            return Err(Error::UnitNotKilled);
        }
        let basis = algebra.basis_elements()?;
        for (i, a) in basis.iter().enumerate() {
            let da = der.apply(a)?;
            for (j, b) in basis.iter().enumerate() {
                let lhs = der.apply(&(a * b))?;
                let rhs = &(&da * b) + &(a * &der.apply(b)?);
                if lhs != rhs {
                    return Err(Error::LeibnizViolation(i, j));
                }
            }
        }
        Ok(der)
    }

    /// `g · d/dx` on exponential polynomials.
    pub fn exp_poly(algebra: &Algebra, g: Element) -> Result<Derivation> {
        if !matches!(algebra.kind(), AlgebraKind::ExpPoly) {
            return Err(Error::BadDescriptor("g*d/dx needs the exponential-polynomial algebra".into()));
        }
        if g.algebra() != algebra {
            return Err(Error::AlgebraMismatch);
        }
        Ok(Derivation {
            algebra: algebra.clone(),
            name: "D".into(),
            def: Definition::ExpPoly(g),
        })
    }

    /// `d/dx` on exponential polynomials.
    pub fn d_dx(algebra: &Algebra) -> Result<Derivation> {
        Derivation::exp_poly(algebra, algebra.one())
    }

    /// `∂/∂v`: the variable `v` maps to 1, every other variable to 0.
    pub fn partial(algebra: &Algebra, v: &str) -> Result<Derivation> {
        Derivation::from_images(algebra, &[(v, algebra.one())])
    }

    /// `Σ w_i x_i ∂/∂x_i` with integer weights.
    pub fn euler(algebra: &Algebra, weights: &[i64]) -> Result<Derivation> {
        let vars = algebra.variables();
        if weights.len() != vars.len() {
            return Err(Error::ArityMismatch {
                expected: vars.len(),
                found: weights.len(),
            });
        }
        let images: Vec<(&str, Element)> = vars
            .iter()
            .zip(weights)
            .map(|(v, &w)| Ok((v.as_str(), algebra.var(v)?.scale_int(w))))
            .collect::<Result<_>>()?;
        Derivation::from_images(algebra, &images)
    }

    pub fn zero(algebra: &Algebra) -> Derivation {
        let def = match algebra.kind() {
            AlgebraKind::ExpPoly => Definition::ExpPoly(algebra.zero()),
            AlgebraKind::StructureConstants { .. } => {
                let d = algebra.dim().unwrap_or(0);
                Definition::Matrix(Matrix::zeros(algebra.field(), d, d))
            }
            _ => Definition::Images(vec![algebra.zero(); algebra.variables().len()]),
        };
        Derivation {
            algebra: algebra.clone(),
            name: "0".into(),
            def,
        }
    }

    pub fn with_name(mut self, name: &str) -> Derivation {
        self.name = name.to_string();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    /// Generator images, when the derivation was given that way.
    pub fn images(&self) -> Option<&[Element]> {
        match &self.def {
            Definition::Images(v) => Some(v),
            _ => None,
        }
    }

    // Every ideal generator (plus, for word-length truncations, every word of
    // length L+1) must map into the ideal.
    fn check_ideal(&self) -> Result<()> {
        let alg = &self.algebra;
        let Definition::Images(imgs) = &self.def else {
            return Ok(());
        };
        match alg.kind() {
            AlgebraKind::Commutative { ideal, variables } => {
                for g in ideal {
                    let image = self.leibniz_exponents(g, imgs);
                    if !image.is_zero() {
                        return Err(Error::IdealNotPreserved {
                            generator: crate::algebra::format_exponents(variables, g),
                            image: image.to_string(),
                        });
                    }
                }
            }
            AlgebraKind::Noncommutative {
                ideal,
                variables,
                max_word_length,
            } => {
                let mut gens: Vec<Vec<usize>> = ideal.clone();
                if let Some(l) = max_word_length {
                    gens.extend(boundary_words(variables.len(), ideal, *l));
                }
                for g in gens {
                    let image = self.leibniz_word(&g, imgs);
                    if !image.is_zero() {
                        return Err(Error::IdealNotPreserved {
                            generator: g.iter().map(|&i| variables[i].as_str()).collect::<Vec<_>>().join("*"),
                            image: image.to_string(),
                        });
                    }
                }
            }
            _ => {}
        }
        Ok(())
    }

    // D(x^e) = Σ_i e_i x^{e-δ_i} D(x_i), evaluated in the quotient.
    fn leibniz_exponents(&self, e: &[u32], imgs: &[Element]) -> Element {
        let alg = &self.algebra;
        let f = alg.field();
        let mut acc = alg.zero();
        for (i, &k) in e.iter().enumerate() {
            if k == 0 || imgs[i].is_zero() {
                continue;
            }
            let mut rest = e.to_vec();
            rest[i] -= 1;
            let m = alg.monomial_element(Monomial::Exponents(rest), f.int(k as i64));
            acc = &acc + &(&m * &imgs[i]);
        }
        acc
    }

    // D(w_1…w_k) = Σ_j w_1…w_{j-1} D(w_j) w_{j+1}…w_k.
    fn leibniz_word(&self, w: &[usize], imgs: &[Element]) -> Element {
        let alg = &self.algebra;
        let one = alg.field().one();
        let mut acc = alg.zero();
        for (j, &v) in w.iter().enumerate() {
            if imgs[v].is_zero() {
                continue;
            }
            let pre = alg.monomial_element(Monomial::Word(w[..j].to_vec()), one.clone());
            let post = alg.monomial_element(Monomial::Word(w[j + 1..].to_vec()), one.clone());
            if pre.is_zero() || post.is_zero() {
                continue;
            }
            acc = &acc + &(&(&pre * &imgs[v]) * &post);
        }
        acc
    }

    pub fn apply(&self, a: &Element) -> Result<Element> {
        if a.algebra() != &self.algebra {
            return Err(Error::AlgebraMismatch);
        }
        Ok(match &self.def {
            Definition::Images(imgs) => a.map_terms(|m| match m {
                Monomial::Exponents(e) => self.leibniz_exponents(e, imgs),
                Monomial::Word(w) => self.leibniz_word(w, imgs),
                _ => unreachable!("generated kinds only"),
            }),
            Definition::Matrix(m) => {
                let v = m.mul_vec(&self.algebra.coords(a)?)?;
                self.algebra.from_coords(&v)?
            }
            Definition::ExpPoly(g) => {
                let f = self.algebra.field();
                let d = a.map_terms(|m| {
                    let Monomial::Exp { rate, degree } = m else {
                        unreachable!("exponential polynomials only")
                    };
                    let mut out = self
                        .algebra
                        .monomial_element(m.clone(), f.rational(rate).expect("rational field"));
                    if *degree > 0 {
                        let lower = Monomial::Exp {
                            rate: rate.clone(),
                            degree: degree - 1,
                        };
                        out = &out + &self.algebra.monomial_element(lower, f.int(*degree as i64));
                    }
                    out
                });
                g * &d
            }
        })
    }

    pub fn apply_power(&self, a: &Element, k: u32) -> Result<Element> {
        let mut x = a.clone();
        for _ in 0..k {
            x = self.apply(&x)?;
        }
        Ok(x)
    }

    pub fn matrix_of(&self) -> Result<Matrix> {
        if let Definition::Matrix(m) = &self.def {
            return Ok(m.clone());
        }
        self.algebra.matrix_of_map(|b| self.apply(b))
    }

    /// Points at which two derivations must agree for them to be equal.
    fn probe_points(&self) -> Result<Vec<Element>> {
        let alg = &self.algebra;
        Ok(match alg.kind() {
            AlgebraKind::Commutative { .. } | AlgebraKind::Noncommutative { .. } => {
                (0..alg.variables().len()).map(|i| alg.generator(i)).collect()
            }
            AlgebraKind::StructureConstants { .. } => alg.basis_elements()?,
            // Within the family g·d/dx, a derivation is fixed by its value on x.
            AlgebraKind::ExpPoly => vec![alg.generator(0)],
        })
    }

    /// Whether `D1 D2 = D2 D1`. The commutator is again a derivation, so it
    /// suffices to compare on generators.
    pub fn commutes_with(&self, other: &Derivation) -> Result<bool> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch);
        }
        for p in self.probe_points()? {
            if self.apply(&other.apply(&p)?)? != other.apply(&self.apply(&p)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn minimal_polynomial(&self) -> Result<UniPoly> {
        self.matrix_of()?.minimal_polynomial()
    }

    pub fn is_zero(&self) -> Result<bool> {
        Ok(self.probe_points()?.iter().map(|p| self.apply(p)).collect::<Result<Vec<_>>>()?.iter().all(Element::is_zero))
    }

    /// Nilpotency, local nilpotency, local finiteness and algebraicity.
    /// Exact on finite-dimensional algebras; budgeted orbit analysis otherwise.
    pub fn classify(&self, budget: usize) -> Result<Classification> {
        let alg = &self.algebra;
        if alg.dim().is_some() {
            let mp = self.minimal_polynomial()?;
            let deg = mp.degree().unwrap_or(0);
            let is_power_of_t = mp.coeffs().iter().take(deg).all(Scalar::is_zero);
            return Ok(Classification {
                nilpotent: Tri::from_bool(is_power_of_t),
                nilpotency_index: is_power_of_t.then_some(deg as u32),
                locally_nilpotent: Tri::from_bool(is_power_of_t),
                locally_finite: Tri::Yes,
                algebraic: Tri::Yes,
                minimal_polynomial: Some(mp),
            });
        }
        if self.is_zero()? {
            return Ok(Classification {
                nilpotent: Tri::Yes,
                nilpotency_index: Some(1),
                locally_nilpotent: Tri::Yes,
                locally_finite: Tri::Yes,
                algebraic: Tri::Yes,
                minimal_polynomial: Some(UniPoly::linear(&alg.field().zero())),
            });
        }
        if let Definition::ExpPoly(g) = &self.def {
            // c·d/dx with c ≠ 0 scales e^{λx} by cλ for every λ ∈ ℚ: infinitely
            // many eigenvalues, yet every x^j e^{λx} has a (j+1)-dimensional orbit.
            if g.is_scalar() {
                return Ok(Classification {
                    nilpotent: Tri::No,
                    nilpotency_index: None,
                    locally_nilpotent: Tri::No,
                    locally_finite: Tri::Yes,
                    algebraic: Tri::No,
                    minimal_polynomial: None,
                });
            }
            return Ok(Classification {
                nilpotent: Tri::Unknown,
                nilpotency_index: None,
                locally_nilpotent: Tri::Unknown,
                locally_finite: Tri::Unknown,
                algebraic: Tri::Unknown,
                minimal_polynomial: None,
            });
        }
        // Locally finite (resp. nilpotent) elements form a subalgebra, so the
        // generators decide both properties.
        let mut finite = Tri::Yes;
        let mut nil = Tri::Yes;
        for x in self.probe_points()? {
            match orbit(self, &x, budget)? {
                Orbit::Finite { nilpotent } => {
                    if !nilpotent {
                        nil = Tri::No;
                    }
                }
                Orbit::Exhausted => {
                    finite = Tri::Unknown;
                    if nil == Tri::Yes {
                        nil = Tri::Unknown;
                    }
                }
            }
        }
        Ok(Classification {
            nilpotent: if nil == Tri::No { Tri::No } else { Tri::Unknown },
            nilpotency_index: None,
            locally_nilpotent: nil,
            locally_finite: finite,
            algebraic: Tri::Unknown,
            minimal_polynomial: None,
        })
    }
}

enum Orbit {
    Finite { nilpotent: bool },
    Exhausted,
}

// Span of x, Dx, D²x, … tracked in the coordinates of the monomials met so far.
fn orbit(d: &Derivation, x: &Element, budget: usize) -> Result<Orbit> {
    let f = d.algebra.field();
    let mut monos: BTreeMap<Monomial, usize> = BTreeMap::new();
    let mut vectors: Vec<Element> = Vec::new();
    let mut cur = x.clone();
    for _ in 0..=budget {
        if cur.is_zero() {
            return Ok(Orbit::Finite { nilpotent: true });
        }
        for m in cur.terms().keys() {
            let n = monos.len();
            monos.entry(m.clone()).or_insert(n);
        }
        let to_vec = |e: &Element| {
            let mut v = vec![f.zero(); monos.len()];
            for (m, c) in e.terms() {
                v[monos[m]] = c.clone();
            }
            v
        };
        let span = Subspace::from_spanning(f, monos.len(), vectors.iter().map(to_vec).collect())?;
        if !vectors.is_empty() && span.contains(&to_vec(&cur))? {
            // Invariant subspace of dimension k reached; nilpotent on it iff D^k x = 0.
            let k = vectors.len() as u32;
            let nilpotent = d.apply_power(x, k)?.is_zero();
            return Ok(Orbit::Finite { nilpotent });
        }
        vectors.push(cur.clone());
        cur = d.apply(&cur)?;
    }
    Ok(Orbit::Exhausted)
}

// Words of length l+1 avoiding the ideal: the extra generators introduced by
// truncating at word length l.
fn boundary_words(n: usize, ideal: &[Vec<usize>], l: usize) -> Vec<Vec<usize>> {
    let mut level: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..=l {
        let mut next = Vec::new();
        for w in &level {
            for v in 0..n {
                let mut w2 = w.clone();
                w2.push(v);
                if !ideal.iter().any(|g| w2.ends_with(g)) {
                    next.push(w2);
                }
            }
        }
        level = next;
    }
    level
}

/// All derivations of a finite-dimensional algebra, as a basis of the
/// solution space of the Leibniz equations on basis pairs.
pub fn derivation_space(algebra: &Algebra) -> Result<Vec<Derivation>> {
    let d = algebra.require_finite()?;
    let f = algebra.field();
    let basis = algebra.basis_elements()?;
    // c[i][j] = coordinates of e_i e_j.
    let c: Vec<Vec<Vec<Scalar>>> = basis
        .iter()
        .map(|a| basis.iter().map(|b| algebra.coords(&(a * b))).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    // Unknown M[r][k] at index r*d + k. For each (i, j, r):
    // Σ_k c_ij^k M[r][k] − Σ_l M[l][i] c_lj^r − Σ_l M[l][j] c_il^r = 0.
    let mut rows = Vec::new();
    for i in 0..d {
        for j in 0..d {
            for r in 0..d {
                let mut row = vec![f.zero(); d * d];
                for k in 0..d {
                    row[r * d + k] = &row[r * d + k] + &c[i][j][k];
                }
                for l in 0..d {
                    row[l * d + i] = &row[l * d + i] - &c[l][j][r];
                    row[l * d + j] = &row[l * d + j] - &c[i][l][r];
                }
                if row.iter().any(|s| !s.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let system = if rows.is_empty() {
        Matrix::zeros(f, 1, d * d)
    } else {
        Matrix::from_rows(f, rows)?
    };
    system
        .kernel()
        .basis()
        .iter()
        .map(|v| {
            let m = Matrix::from_rows(f, v.chunks(d).map(<[Scalar]>::to_vec).collect())?;
            Derivation::from_matrix(algebra, m)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::Field;

    const Q: Field = Field::Rational;

    #[test]
    fn d_dx_rejected_on_x4() {
        let a = Algebra::truncated(Q, &["x"], &[4]).unwrap();
        let err = Derivation::partial(&a, "x").unwrap_err();
        assert_eq!(
            err,
            Error::IdealNotPreserved {
                generator: "x^4".into(),
                image: "4*x^3".into()
            }
        );
    }

    #[test]
    fn d_dx_valid_in_char_5() {
        let f5 = Field::prime(5).unwrap();
        let a = Algebra::truncated(f5, &["x"], &[5]).unwrap();
        let d = Derivation::partial(&a, "x").unwrap();
        let c = d.classify(8).unwrap();
        assert_eq!(c.nilpotency_index, Some(5));
        assert_eq!(d.minimal_polynomial().unwrap(), UniPoly::from_ints(f5, &[0, 0, 0, 0, 0, 1]));
    }

    #[test]
    fn euler_on_bidegree_algebra() {
        let a = Algebra::truncated(Q, &["x1", "x2"], &[2, 3]).unwrap();
        let d = Derivation::euler(&a, &[1, 1]).unwrap();
        assert_eq!(d.minimal_polynomial().unwrap(), UniPoly::from_ints(Q, &[0, -6, 11, -6, 1]));
        let m = Derivation::euler(&Algebra::truncated(Q, &["x"], &[3]).unwrap(), &[1])
            .unwrap()
            .matrix_of()
            .unwrap();
        assert_eq!(m, Matrix::from_ints(Q, &[&[0, 0, 0], &[0, 1, 0], &[0, 0, 2]]));
    }

    #[test]
    fn d_dx_matrix_in_char_3_is_upper_shift() {
        let f3 = Field::prime(3).unwrap();
        let a = Algebra::truncated(f3, &["x"], &[3]).unwrap();
        let m = Derivation::partial(&a, "x").unwrap().matrix_of().unwrap();
        assert_eq!(m, Matrix::from_ints(f3, &[&[0, 1, 0], &[0, 0, 2], &[0, 0, 0]]));
    }

    #[test]
    fn noncommutative_partial() {
        let a = Algebra::noncommutative(Q, &["X", "Y"], &["YY"], None).unwrap();
        let d = Derivation::partial(&a, "X").unwrap();
        let xy = a.parse("X*Y").unwrap();
        assert_eq!(d.apply(&xy).unwrap(), a.parse("Y").unwrap());
        for m in 1..=6 {
            let lhs = d.apply(&xy.pow(m)).unwrap();
            assert_eq!(lhs, &a.parse("Y").unwrap() * &xy.pow(m - 1));
        }
        // ∂/∂X lowers word length, so it does not survive a length truncation.
        let t = Algebra::noncommutative(Q, &["X", "Y"], &["YY"], Some(4)).unwrap();
        assert!(matches!(Derivation::partial(&t, "X"), Err(Error::IdealNotPreserved { .. })));
    }

    #[test]
    fn exp_poly_product_rule() {
        let e = Algebra::exp_poly();
        let d = Derivation::d_dx(&e).unwrap();
        let got = d.apply(&e.parse("x*E(2)").unwrap()).unwrap();
        assert_eq!(got, e.parse("E(2) + 2*x*E(2)").unwrap());
        let c = d.classify(DEFAULT_ORBIT_BUDGET).unwrap();
        assert_eq!((c.locally_finite, c.locally_nilpotent, c.nilpotent), (Tri::Yes, Tri::No, Tri::No));
    }

    #[test]
    fn commuting() {
        let a = Algebra::truncated(Q, &["x1", "x2"], &[2, 3]).unwrap();
        let d1 = Derivation::euler(&a, &[1, 0]).unwrap();
        let d2 = Derivation::euler(&a, &[0, 1]).unwrap();
        assert!(d1.commutes_with(&d2).unwrap());
        assert!(d1.commutes_with(&d1).unwrap());
        // x2·∂/∂x1 does not preserve (x1·x2) alone, so use the square of the
        // maximal ideal, where it does.
        let b = Algebra::commutative(Q, &["x1", "x2"], vec![vec![2, 0], vec![1, 1], vec![0, 2]]).unwrap();
        let bad = Algebra::commutative(Q, &["x1", "x2"], vec![vec![1, 1]]).unwrap();
        assert!(Derivation::from_image_strings(&bad, &[("x1", "x2")]).is_err());
        let e1 = Derivation::euler(&b, &[1, 0]).unwrap();
        let e2 = Derivation::from_image_strings(&b, &[("x1", "x2")]).unwrap();
        assert!(!e1.commutes_with(&e2).unwrap());
    }

    #[test]
    fn product_of_fields_is_rigid() {
        let a = Algebra::product_of_fields(Q, 3).unwrap();
        assert!(derivation_space(&a).unwrap().is_empty());
        let t = Algebra::truncated(Q, &["x"], &[3]).unwrap();
        // D(x) ∈ span{x, x²}: two-dimensional.
        assert_eq!(derivation_space(&t).unwrap().len(), 2);
    }

    #[test]
    fn classify_infinite_polynomial_ring() {
        let a = Algebra::commutative(Q, &["x", "y"], vec![vec![0, 2]]).unwrap();
        let d = Derivation::partial(&a, "x").unwrap();
        let c = d.classify(16).unwrap();
        assert_eq!(c.locally_nilpotent, Tri::Yes);
        assert_eq!(c.locally_finite, Tri::Yes);
        let e = Derivation::euler(&a, &[1, 0]).unwrap();
        assert_eq!(e.classify(16).unwrap().locally_nilpotent, Tri::No);
    }
}
