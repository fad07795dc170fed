//! Differential operators `Σ a·(word in D_1..D_n and ℓ_b)` over an algebra,
//! polynomials `P(ξ)` with left-placed coefficients, and the commutator
//! calculus `ad_u(Φ) = ℓ_u Φ − Φ ℓ_u`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::json;

use crate::algebra::Element;
use crate::algebra::Algebra;
use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::exactmath::{binomial, factorial, Matrix, Scalar, UniPoly};
use crate::report::{Check, Report, Status};

/// `P(ξ) = Σ a_α ξ^α` with coefficients `a_α` in the algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorPolynomial {
    algebra: Algebra,
    arity: usize,
    terms: BTreeMap<Vec<u32>, Element>,
}

impl OperatorPolynomial {
    pub fn zero(algebra: &Algebra, arity: usize) -> OperatorPolynomial {
        OperatorPolynomial {
            algebra: algebra.clone(),
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(algebra: &Algebra, arity: usize, terms: Vec<(Vec<u32>, Element)>) -> Result<OperatorPolynomial> {
        let mut p = OperatorPolynomial::zero(algebra, arity);
        for (alpha, c) in terms {
            if alpha.len() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    found: alpha.len(),
                });
            }
            if c.algebra() != algebra {
                return Err(Error::AlgebraMismatch);
            }
            p.add_term(alpha, c);
        }
        Ok(p)
    }

    /// Coefficients given as expressions in the algebra.
    pub fn parse_terms(algebra: &Algebra, arity: usize, terms: &[(Vec<u32>, &str)]) -> Result<OperatorPolynomial> {
        let parsed = terms
            .iter()
            .map(|(a, t)| Ok((a.clone(), algebra.parse(t)?)))
            .collect::<Result<Vec<_>>>()?;
        OperatorPolynomial::from_terms(algebra, arity, parsed)
    }

    /// Scalar-coefficient polynomial from integer coefficients.
    pub fn from_ints(algebra: &Algebra, arity: usize, terms: &[(Vec<u32>, i64)]) -> Result<OperatorPolynomial> {
        let t = terms.iter().map(|(a, c)| (a.clone(), algebra.int(*c))).collect();
        OperatorPolynomial::from_terms(algebra, arity, t)
    }

    /// Univariate polynomial with scalar coefficients.
    pub fn univariate(algebra: &Algebra, p: &UniPoly) -> OperatorPolynomial {
        let mut out = OperatorPolynomial::zero(algebra, 1);
        for (k, c) in p.coeffs().iter().enumerate() {
            out.add_term(vec![k as u32], algebra.scalar(c.clone()));
        }
        out
    }

    fn add_term(&mut self, alpha: Vec<u32>, c: Element) {
        let sum = match self.terms.remove(&alpha) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(alpha, sum);
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Element> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree `d`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|a| total(a)).max()
    }

    /// The homogeneous part `P_k`.
    pub fn homogeneous(&self, k: usize) -> OperatorPolynomial {
        OperatorPolynomial {
            algebra: self.algebra.clone(),
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|(a, _)| total(a) == k)
                .map(|(a, c)| (a.clone(), c.clone()))
                .collect(),
        }
    }

    /// `a_0 = P(0)`.
    pub fn constant(&self) -> Element {
        self.terms
            .get(&vec![0; self.arity])
            .cloned()
            .unwrap_or_else(|| self.algebra.zero())
    }

    /// Formal partial derivative `∂P/∂ξ_i`.
    pub fn partial(&self, i: usize) -> OperatorPolynomial {
        let mut out = OperatorPolynomial::zero(&self.algebra, self.arity);
        for (a, c) in &self.terms {
            if a[i] == 0 {
                continue;
            }
            let mut b = a.clone();
            b[i] -= 1;
            out.add_term(b, c.scale_int(a[i] as i64));
        }
        out
    }

    pub fn add(&self, other: &OperatorPolynomial) -> OperatorPolynomial {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }

    /// Whether every coefficient is a scalar multiple of 1.
    pub fn is_scalar(&self) -> bool {
        self.terms.values().all(Element::is_scalar)
    }

    /// `P(λ)` for a scalar polynomial at a scalar point.
    pub fn eval_scalar(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: point.len(),
            });
        }
        if !self.is_scalar() {
            return Err(Error::BadDescriptor("polynomial has non-scalar coefficients".into()));
        }
        let f = self.algebra.field();
        Ok(self.terms.iter().fold(f.zero(), |acc, (a, c)| {
            let mono = a
                .iter()
                .zip(point)
                .fold(f.one(), |m, (&k, x)| &m * &x.pow(k));
            &acc + &(&c.constant_term() * &mono)
        }))
    }

    /// `Σ a_α Π v_i^{α_i}`; needs a commutative algebra.
    pub fn eval_elements(&self, values: &[Element]) -> Result<Element> {
        if !self.algebra.is_commutative() {
            return Err(Error::NoncommutativeEvaluation);
        }
        if values.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: values.len(),
            });
        }
        let mut acc = self.algebra.zero();
        for (a, c) in &self.terms {
            let mut t = c.clone();
            for (v, &k) in values.iter().zip(a) {
                t = &t * &v.pow(k);
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "arity": self.arity,
            "terms": self.terms.iter().map(|(a, c)| json!({"xi_exponents": a, "coeff": c.to_string()})).collect::<Vec<_>>(),
        })
    }
}

impl std::fmt::Display for OperatorPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(a, c)| {
                let xi: Vec<String> = a
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| {
                        let name = if self.arity == 1 { "xi".to_string() } else { format!("xi{}", i + 1) };
                        if k == 1 {
                            name
                        } else {
                            format!("{name}^{k}")
                        }
                    })
                    .collect();
                if xi.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{}", xi.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn total(a: &[u32]) -> usize {
    a.iter().map(|&k| k as usize).sum()
}

/// One factor of an operator word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    /// The `i`-th derivation of the tuple.
    Der(usize),
    /// Left multiplication `ℓ_b`.
    Left(Element),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Body {
    /// `Σ a_α D^α`, valid when the algebra is commutative and the tuple commutes.
    Canonical(BTreeMap<Vec<u32>, Element>),
    /// `Σ a·w` with words kept verbatim.
    Words(Vec<(Element, Vec<Atom>)>),
}

/// An element of the operator algebra generated by left multiplications and
/// a fixed tuple of derivations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOperator {
    algebra: Algebra,
    ders: Arc<Vec<Derivation>>,
    body: Body,
}

/// Whether canonical multi-index form is available for this tuple.
pub fn tuple_is_canonical(algebra: &Algebra, ders: &[Derivation]) -> Result<bool> {
    if !algebra.is_commutative() {
        return Ok(false);
    }
    for (i, a) in ders.iter().enumerate() {
        if a.algebra() != algebra {
            return Err(Error::AlgebraMismatch);
        }
        for b in &ders[i + 1..] {
            if !a.commutes_with(b)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

impl DiffOperator {
    fn check_tuple(algebra: &Algebra, ders: &[Derivation]) -> Result<()> {
        if ders.iter().any(|d| d.algebra() != algebra) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    /// Zero operator in canonical form when possible, word form otherwise.
    pub fn zero(algebra: &Algebra, ders: Arc<Vec<Derivation>>) -> Result<DiffOperator> {
        DiffOperator::check_tuple(algebra, &ders)?;
        let body = if tuple_is_canonical(algebra, &ders)? {
            Body::Canonical(BTreeMap::new())
        } else {
            Body::Words(Vec::new())
        };
        Ok(DiffOperator {
            algebra: algebra.clone(),
            ders,
            body,
        })
    }

    /// Zero operator that keeps words verbatim regardless of commutativity.
    pub fn zero_words(algebra: &Algebra, ders: Arc<Vec<Derivation>>) -> Result<DiffOperator> {
        DiffOperator::check_tuple(algebra, &ders)?;
        Ok(DiffOperator {
            algebra: algebra.clone(),
            ders,
            body: Body::Words(Vec::new()),
        })
    }

    /// Zero operator in canonical form; fails unless the tuple commutes on a
    /// commutative algebra.
    pub fn zero_canonical(algebra: &Algebra, ders: Arc<Vec<Derivation>>) -> Result<DiffOperator> {
        DiffOperator::check_tuple(algebra, &ders)?;
        if !algebra.is_commutative() {
            return Err(Error::Noncommutative);
        }
        if !tuple_is_canonical(algebra, &ders)? {
            return Err(Error::NonCommutingTuple);
        }
        Ok(DiffOperator {
            algebra: algebra.clone(),
            ders,
            body: Body::Canonical(BTreeMap::new()),
        })
    }

    fn empty_like(&self) -> DiffOperator {
        DiffOperator {
            algebra: self.algebra.clone(),
            ders: self.ders.clone(),
            body: match self.body {
                Body::Canonical(_) => Body::Canonical(BTreeMap::new()),
                Body::Words(_) => Body::Words(Vec::new()),
            },
        }
    }

    /// `a · w` as an operator of the same form as `self`.
    fn with_term(&self, coeff: Element, word: Vec<Atom>) -> DiffOperator {
        let mut out = self.empty_like();
        out.push_word(coeff, word);
        out
    }

    pub fn is_canonical(&self) -> bool {
        matches!(self.body, Body::Canonical(_))
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn derivations(&self) -> &Arc<Vec<Derivation>> {
        &self.ders
    }

    pub fn identity_like(&self) -> DiffOperator {
        self.with_term(self.algebra.one(), Vec::new())
    }

    pub fn left_like(&self, a: &Element) -> DiffOperator {
        self.with_term(a.clone(), Vec::new())
    }

    pub fn der_like(&self, i: usize) -> DiffOperator {
        self.with_term(self.algebra.one(), vec![Atom::Der(i)])
    }

    /// `P(D)` with the coefficients of `P` on the left.
    pub fn from_polynomial(p: &OperatorPolynomial, ders: Arc<Vec<Derivation>>) -> Result<DiffOperator> {
        let zero = DiffOperator::zero(p.algebra(), ders)?;
        zero.polynomial_like(p)
    }

    /// `P(D)` kept in word form.
    pub fn from_polynomial_words(p: &OperatorPolynomial, ders: Arc<Vec<Derivation>>) -> Result<DiffOperator> {
        let zero = DiffOperator::zero_words(p.algebra(), ders)?;
        zero.polynomial_like(p)
    }

    fn polynomial_like(&self, p: &OperatorPolynomial) -> Result<DiffOperator> {
        if p.arity() != self.ders.len() {
            return Err(Error::ArityMismatch {
                expected: p.arity(),
                found: self.ders.len(),
            });
        }
        if p.algebra() != &self.algebra {
            return Err(Error::AlgebraMismatch);
        }
        let mut out = self.empty_like();
        for (alpha, c) in p.terms() {
            let word = alpha
                .iter()
                .enumerate()
                .flat_map(|(i, &k)| std::iter::repeat(Atom::Der(i)).take(k as usize))
                .collect();
            out.push_word(c.clone(), word);
        }
        Ok(out)
    }

    // Adds `coeff · word`. In canonical form, the word is first rewritten as
    // Σ b_α D^α by composing its atoms one at a time.
    fn push_word(&mut self, coeff: Element, word: Vec<Atom>) {
        if coeff.is_zero() {
            return;
        }
        match &mut self.body {
            Body::Words(terms) => {
                // ℓ_a ℓ_b = ℓ_{ab}: fold leading left multiplications into the coefficient.
                let mut coeff = coeff;
                let mut start = 0;
                while let Some(Atom::Left(b)) = word.get(start) {
                    coeff = &coeff * b;
                    start += 1;
                }
                if coeff.is_zero() {
                    return;
                }
                let word: Vec<Atom> = word[start..]
                    .iter()
                    .filter(|a| !matches!(a, Atom::Left(b) if b.is_one()))
                    .cloned()
                    .collect();
                if let Some(pos) = terms.iter().position(|(_, w)| *w == word) {
                    let sum = &terms[pos].0 + &coeff;
                    if sum.is_zero() {
                        terms.remove(pos);
                    } else {
                        terms[pos].0 = sum;
                    }
                } else {
                    terms.push((coeff, word));
                }
            }
            Body::Canonical(_) => {
                let n = self.ders.len();
                let mut acc: BTreeMap<Vec<u32>, Element> = BTreeMap::new();
                acc.insert(vec![0; n], coeff);
                for atom in word {
                    acc = match atom {
                        Atom::Der(i) => acc
                            .into_iter()
                            .map(|(mut a, c)| {
                                a[i] += 1;
                                (a, c)
                            })
                            .collect(),
                        Atom::Left(b) => {
                            let mut single = BTreeMap::new();
                            single.insert(vec![0; n], b);
                            canonical_compose(&self.ders, &acc, &single)
                        }
                    };
                }
                let Body::Canonical(terms) = &mut self.body else { unreachable!() };
                for (a, c) in acc {
                    add_canonical(terms, a, c);
                }
            }
        }
    }

    fn words(&self) -> Vec<(Element, Vec<Atom>)> {
        match &self.body {
            Body::Words(t) => t.clone(),
            Body::Canonical(t) => t
                .iter()
                .map(|(a, c)| {
                    let w = a
                        .iter()
                        .enumerate()
                        .flat_map(|(i, &k)| std::iter::repeat(Atom::Der(i)).take(k as usize))
                        .collect();
                    (c.clone(), w)
                })
                .collect(),
        }
    }

    fn same(&self, other: &DiffOperator) -> Result<()> {
        if self.algebra != other.algebra || self.ders != other.ders {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &DiffOperator) -> Result<DiffOperator> {
        self.same(other)?;
        let mut out = self.clone();
        match (&mut out.body, &other.body) {
            (Body::Canonical(t), Body::Canonical(o)) => {
                for (a, c) in o {
                    add_canonical(t, a.clone(), c.clone());
                }
            }
            _ => {
                if out.is_canonical() {
                    out.body = Body::Words(out.words());
                }
                for (c, w) in other.words() {
                    out.push_word(c, w);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> DiffOperator {
        self.left_mul(&self.algebra.scalar(s.clone()))
    }

    pub fn neg(&self) -> DiffOperator {
        self.scale(&-self.algebra.field().one())
    }

    pub fn sub(&self, other: &DiffOperator) -> Result<DiffOperator> {
        self.add(&other.neg())
    }

    /// `ℓ_a ∘ Φ`.
    pub fn left_mul(&self, a: &Element) -> DiffOperator {
        let mut out = self.empty_like();
        for (c, w) in self.words() {
            out.push_word(a * &c, w);
        }
        out
    }

    /// `Φ ∘ ℓ_a`.
    pub fn right_mul(&self, a: &Element) -> DiffOperator {
        self.compose(&self.left_like(a)).expect("same operator algebra")
    }

    /// `Φ ∘ Ψ`.
    pub fn compose(&self, other: &DiffOperator) -> Result<DiffOperator> {
        self.same(other)?;
        if let (Body::Canonical(a), Body::Canonical(b)) = (&self.body, &other.body) {
            return Ok(DiffOperator {
                algebra: self.algebra.clone(),
                ders: self.ders.clone(),
                body: Body::Canonical(canonical_compose(&self.ders, a, b)),
            });
        }
        let mut out = DiffOperator {
            algebra: self.algebra.clone(),
            ders: self.ders.clone(),
            body: Body::Words(Vec::new()),
        };
        for (a, w1) in self.words() {
            for (b, w2) in other.words() {
                let mut w = w1.clone();
                w.push(Atom::Left(b));
                w.extend(w2.iter().cloned());
                out.push_word(a.clone(), w);
            }
        }
        Ok(out)
    }

    /// `ad_u(Φ) = ℓ_u Φ − Φ ℓ_u`.
    pub fn ad(&self, u: &Element) -> DiffOperator {
        self.left_mul(u).sub(&self.right_mul(u)).expect("same operator algebra")
    }

    /// `(ad_u)^k(Φ)`.
    pub fn ad_power(&self, u: &Element, k: u32) -> DiffOperator {
        (0..k).fold(self.clone(), |acc, _| acc.ad(u))
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        if x.algebra() != &self.algebra {
            return Err(Error::AlgebraMismatch);
        }
        match &self.body {
            Body::Canonical(terms) => {
                let mut memo: BTreeMap<Vec<u32>, Element> = BTreeMap::new();
                let mut acc = self.algebra.zero();
                for (a, c) in terms {
                    let v = derivative_multi(&self.ders, a, x, &mut memo)?;
                    acc = &acc + &(c * &v);
                }
                Ok(acc)
            }
            Body::Words(terms) => {
                let mut acc = self.algebra.zero();
                for (c, w) in terms {
                    let mut y = x.clone();
                    for atom in w.iter().rev() {
                        y = match atom {
                            Atom::Der(i) => self.ders[*i].apply(&y)?,
                            Atom::Left(b) => b * &y,
                        };
                        if y.is_zero() {
                            break;
                        }
                    }
                    acc = &acc + &(c * &y);
                }
                Ok(acc)
            }
        }
    }

    /// Largest number of derivation atoms in a term (the `ξ`-degree in canonical form).
    pub fn order(&self) -> Option<usize> {
        match &self.body {
            Body::Canonical(t) => t.keys().map(|a| total(a)).max(),
            Body::Words(t) => t
                .iter()
                .map(|(_, w)| w.iter().filter(|a| matches!(a, Atom::Der(_))).count())
                .max(),
        }
    }

    /// Canonical coefficients `a_α` (only in canonical form).
    pub fn canonical_terms(&self) -> Option<&BTreeMap<Vec<u32>, Element>> {
        match &self.body {
            Body::Canonical(t) => Some(t),
            Body::Words(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.body {
            Body::Canonical(t) => t.is_empty(),
            Body::Words(t) => t.is_empty(),
        }
    }

    /// Matrix of the operator on a finite-dimensional algebra.
    pub fn matrix(&self) -> Result<Matrix> {
        self.algebra.matrix_of_map(|b| self.apply(b))
    }

    /// First point where two operators act differently, if any.
    pub fn disagreement(&self, other: &DiffOperator, points: &[Element]) -> Result<Option<Element>> {
        for p in points {
            if self.apply(p)? != other.apply(p)? {
                return Ok(Some(p.clone()));
            }
        }
        Ok(None)
    }
}

fn add_canonical(terms: &mut BTreeMap<Vec<u32>, Element>, a: Vec<u32>, c: Element) {
    let sum = match terms.remove(&a) {
        Some(old) => &old + &c,
        None => c,
    };
    if !sum.is_zero() {
        terms.insert(a, sum);
    }
}

// D^α(x) = D_1^{α_1} ⋯ D_n^{α_n} x, memoized by multi-index.
fn derivative_multi(
    ders: &[Derivation],
    alpha: &[u32],
    x: &Element,
    memo: &mut BTreeMap<Vec<u32>, Element>,
) -> Result<Element> {
    if let Some(v) = memo.get(alpha) {
        return Ok(v.clone());
    }
    let v = match alpha.iter().position(|&k| k > 0) {
        None => x.clone(),
        Some(i) => {
            let mut lower = alpha.to_vec();
            lower[i] -= 1;
            let inner = derivative_multi(ders, &lower, x, memo)?;
            ders[i].apply(&inner)?
        }
    };
    memo.insert(alpha.to_vec(), v.clone());
    Ok(v)
}

// (Σ a_α D^α)(Σ b_β D^β) = Σ a_α Σ_{γ ≤ α} C(α,γ) D^γ(b_β) D^{α−γ+β}.
fn canonical_compose(
    ders: &[Derivation],
    a: &BTreeMap<Vec<u32>, Element>,
    b: &BTreeMap<Vec<u32>, Element>,
) -> BTreeMap<Vec<u32>, Element> {
    let mut out = BTreeMap::new();
    for (beta, bc) in b {
        let mut memo = BTreeMap::new();
        for (alpha, ac) in a {
            for gamma in sub_indices(alpha) {
                let dg = derivative_multi(ders, &gamma, bc, &mut memo).expect("tuple on the same algebra");
                if dg.is_zero() {
                    continue;
                }
                let f = ac.algebra().field();
                let coef = alpha
                    .iter()
                    .zip(&gamma)
                    .fold(f.one(), |acc, (&n, &k)| &acc * &binomial(f, n as u64, k as u64));
                let idx: Vec<u32> = alpha.iter().zip(&gamma).zip(beta).map(|((&x, &g), &y)| x - g + y).collect();
                add_canonical(&mut out, idx, (ac * &dg).scale(&coef));
            }
        }
    }
    out
}

fn sub_indices(alpha: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &k in alpha {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                (0..=k).map(move |g| {
                    let mut q = p.clone();
                    q.push(g);
                    q
                })
            })
            .collect();
    }
    out
}

/// `∇u = (D_1 u, …, D_n u)`.
pub fn gradient(u: &Element, ders: &[Derivation]) -> Result<Vec<Element>> {
    ders.iter().map(|d| d.apply(u)).collect()
}

/// `P(∇u)`, substituting `D_i u` for `ξ_i`.
pub fn eval_at_gradient(p: &OperatorPolynomial, grad: &[Element]) -> Result<Element> {
    p.eval_elements(grad)
}

/// Points on which operator identities are tested: the whole basis when
/// finite-dimensional, otherwise all monomials up to `degree_budget` plus
/// the supplied random samples.
pub fn test_points(algebra: &Algebra, degree_budget: usize, samples: &[Element]) -> Result<Vec<Element>> {
    if algebra.dim().is_some() {
        return algebra.basis_elements();
    }
    let one = algebra.field().one();
    let mut pts: Vec<Element> = algebra
        .monomials_up_to(degree_budget)
        .into_iter()
        .map(|m| algebra.monomial_element(m, one.clone()))
        .collect();
    pts.extend(samples.iter().cloned());
    Ok(pts)
}

fn coverage(algebra: &Algebra, points: &[Element]) -> String {
    match algebra.dim() {
        Some(d) => format!("exact on all {d} basis elements"),
        None => format!("verified on {} monomials and samples", points.len()),
    }
}

/// `(ad_u)^k(Φ) = Σ_{i=0}^k (−1)^i C(k,i) u^{k−i} Φ ℓ_u^i`, comparing the
/// iterated commutator against the expansion evaluated pointwise.
pub fn ad_expansion_check(u: &Element, phi: &DiffOperator, k: u32, points: &[Element]) -> Result<Check> {
    let name = format!("ad-power expansion k={k}");
    let lhs = phi.ad_power(u, k);
    let f = u.algebra().field();
    for x in points {
        let left = lhs.apply(x)?;
        let mut right = u.algebra().zero();
        for i in 0..=k {
            let c = binomial(f, k as u64, i as u64);
            let c = if i % 2 == 1 { -c } else { c };
            let inner = phi.apply(&(&u.pow(i) * x))?;
            right = &right + &(&u.pow(k - i) * &inner).scale(&c);
        }
        if left != right {
            return Ok(Check::fail(name, "sides differ").with_counterexample(json!({
                "u": u.to_string(), "x": x.to_string(), "lhs": left.to_string(), "rhs": right.to_string()
            })));
        }
    }
    Ok(Check::pass(name, coverage(u.algebra(), points)))
}

/// Two facts about `ad_{−u}` on `P(D)`: the remainder
/// `ad_{−u} P(D) − Σ (D_i u)(∂_i P)(D)` has order ≤ d − 2, and
/// `(ad_{−u})^d P(D)` is multiplication by `d!·P_d(∇u)`.
pub fn ad_lowering_check(u: &Element, p: &OperatorPolynomial, ders: Arc<Vec<Derivation>>, points: &[Element]) -> Result<Report> {
    let alg = u.algebra();
    if !alg.is_commutative() {
        return Err(Error::Noncommutative);
    }
    let phi = DiffOperator::zero_canonical(alg, ders.clone())?.polynomial_like(p)?;
    let d = p.degree().unwrap_or(0);
    let neg_u = -u;
    let grad = gradient(u, &ders)?;
    let mut report = Report::new();

    let mut first_order = phi.empty_like();
    for (i, g) in grad.iter().enumerate() {
        let part = phi.polynomial_like(&p.partial(i))?.left_mul(g);
        first_order = first_order.add(&part)?;
    }
    let remainder = phi.ad(&neg_u).sub(&first_order)?;
    let order = remainder.order();
    let ok = match order {
        None => true,
        Some(o) => d >= 2 && o <= d - 2,
    };
    report.push(Check::verdict(
        "ad lowers order by one with remainder of order <= d-2",
        ok,
        format!("d = {d}, remainder order = {}", order.map_or("none (zero)".into(), |o| o.to_string())),
    ));

    let top = phi.ad_power(&neg_u, d as u32);
    let f = alg.field();
    let mult = eval_at_gradient(&p.homogeneous(d), &grad)?.scale(&f.bigint(&factorial(d as u64)));
    let target = phi.left_like(&mult);
    let name = "d-fold ad is multiplication by d!*P_d(grad u)";
    report.push(match top.disagreement(&target, points)? {
        None => Check::pass(name, coverage(alg, points)),
        Some(x) => Check::fail(name, "operators act differently").with_counterexample(json!({
            "u": u.to_string(), "x": x.to_string()
        })),
    });
    Ok(report)
}

/// If `u^m ∈ Ker P(D)` for `1 ≤ m ≤ d`, then `a_0 u^d = (−1)^d d! P_d(∇u)`;
/// if also `u^{d+1} ∈ Ker P(D)`, then `a_0 u^{d+1} = 0`.
///
/// The right-hand side is computed twice: by evaluating `P_d` at the
/// gradient, and by expanding `(ad_{−u})^d P(D)` as an operator applied to 1.
pub fn power_kernel_check(p: &OperatorPolynomial, ders: Arc<Vec<Derivation>>, u: &Element) -> Result<Report> {
    let alg = u.algebra();
    if !alg.is_commutative() {
        return Err(Error::Noncommutative);
    }
    let d = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::BadDescriptor("polynomial degree must be at least 1".into())),
    };
    let phi_words = DiffOperator::from_polynomial_words(p, ders.clone())?;
    let phi = DiffOperator::from_polynomial(p, ders.clone())?;
    let mut report = Report::new();
    for m in 1..=d as u32 {
        if !phi_words.apply(&u.pow(m))?.is_zero() {
            report.push(Check::new(
                "power kernel identity",
                Status::HypothesisNotMet,
                format!("u^{m} is not in Ker P(D)"),
            ));
            return Ok(report);
        }
    }
    let f = alg.field();
    let sign = if d % 2 == 1 { -f.one() } else { f.one() };
    let a0 = p.constant();
    let lhs = &a0 * &u.pow(d as u32);
    let grad = gradient(u, &ders)?;
    let by_gradient = eval_at_gradient(&p.homogeneous(d), &grad)?.scale(&(&sign * &f.bigint(&factorial(d as u64))));
    let by_operator = phi.ad_power(&-u, d as u32).apply(&alg.one())?.scale(&sign);
    let ok = lhs == by_gradient && by_gradient == by_operator;
    let mut c = Check::verdict(
        "a0*u^d = (-1)^d d! P_d(grad u)",
        ok,
        format!("d = {d}; gradient and operator routes {}", if by_gradient == by_operator { "agree" } else { "disagree" }),
    );
    if !ok {
        c = c.with_counterexample(json!({
            "u": u.to_string(), "P": p.to_string(), "lhs": lhs.to_string(),
            "by_gradient": by_gradient.to_string(), "by_operator": by_operator.to_string()
        }));
    }
    report.push(c);
    let next = u.pow(d as u32 + 1);
    if phi_words.apply(&next)?.is_zero() {
        let v = &a0 * &next;
        report.push(Check::verdict("a0*u^(d+1) = 0", v.is_zero(), format!("a0*u^(d+1) = {v}")));
    } else {
        report.push(Check::new(
            "a0*u^(d+1) = 0",
            Status::HypothesisNotMet,
            "u^(d+1) is not in Ker P(D)",
        ));
    }
    Ok(report)
}

/// Basis of the polynomials `P` of degree ≤ `d` (all coefficients in the
/// algebra) with `P(D)(u^m) = 0` for `1 ≤ m ≤ m_max`. The condition is linear
/// in the coefficients, so this is a kernel computation.
pub fn polynomials_killing_powers(
    u: &Element,
    ders: &[Derivation],
    d: usize,
    m_max: u32,
) -> Result<Vec<OperatorPolynomial>> {
    let alg = u.algebra();
    let dim = alg.require_finite()?;
    let n = ders.len();
    let alphas: Vec<Vec<u32>> = multi_indices(n, d);
    let basis = alg.basis_elements()?;
    let mut columns = Vec::new();
    let mut memos: Vec<BTreeMap<Vec<u32>, Element>> = vec![BTreeMap::new(); m_max as usize];
    let powers: Vec<Element> = (1..=m_max).map(|m| u.pow(m)).collect();
    for alpha in &alphas {
        let derived: Vec<Element> = powers
            .iter()
            .zip(memos.iter_mut())
            .map(|(p, memo)| derivative_multi(ders, alpha, p, memo))
            .collect::<Result<_>>()?;
        for e in &basis {
            let mut col = Vec::with_capacity(dim * m_max as usize);
            for v in &derived {
                col.extend(alg.coords(&(e * v))?);
            }
            columns.push(col);
        }
    }
    let system = Matrix::from_columns(alg.field(), dim * m_max as usize, &columns)?;
    system
        .kernel()
        .basis()
        .iter()
        .map(|v| {
            let mut terms = Vec::new();
            for (ai, alpha) in alphas.iter().enumerate() {
                let coeffs = &v[ai * dim..(ai + 1) * dim];
                terms.push((alpha.clone(), alg.from_coords(coeffs)?));
            }
            OperatorPolynomial::from_terms(alg, n, terms)
        })
        .collect()
}

/// All multi-indices in `n` variables of total degree ≤ `d`.
pub fn multi_indices(n: usize, d: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                let used = total(&p);
                (0..=(d - used) as u32).map(move |k| {
                    let mut q = p.clone();
                    q.push(k);
                    q
                })
            })
            .collect();
    }
    out.sort_by_key(|a| (total(a), a.clone()));
    out
}
