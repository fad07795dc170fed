//! Finite presentations of associative algebras with canonical normal forms.

mod element;
mod nil;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

pub use element::{format_exponents, Element, Monomial};
pub use nil::{nilradical, Nilpotency};

use crate::error::{Error, Result};
use crate::exactmath::{Field, Matrix, Scalar, Subspace};

/// Quotients and tables bigger than this are refused; dense exact linear
/// algebra is impractical beyond it.
pub const DIM_LIMIT: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraKind {
    /// `F[x_1..x_n] / (monomials)`, generators as exponent vectors.
    Commutative {
        variables: Vec<String>,
        ideal: Vec<Vec<u32>>,
    },
    /// `F<x_1..x_n> / (words)`, generators as words of variable indices.
    /// `max_word_length` additionally kills every word longer than the bound.
    Noncommutative {
        variables: Vec<String>,
        ideal: Vec<Vec<usize>>,
        max_word_length: Option<usize>,
    },
    /// Basis `e_0..e_{d-1}` with `table[i][j]` the coordinates of `e_i e_j`.
    StructureConstants {
        labels: Vec<String>,
        table: Vec<Vec<Vec<Scalar>>>,
        unit: usize,
    },
    /// `span{x^j e^{λx}}` with `λ ∈ ℚ`, `j ∈ ℕ`.
    ExpPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraDescriptor {
    pub field: Field,
    pub kind: AlgebraKind,
}

#[derive(Debug)]
struct AlgebraData {
    descriptor: AlgebraDescriptor,
    basis: Option<Vec<Monomial>>,
    index: BTreeMap<Monomial, usize>,
    commutative: bool,
    warnings: Vec<String>,
}

/// A validated algebra. Cheap to clone; all clones share the same data.
#[derive(Clone, Debug)]
pub struct Algebra(Arc<AlgebraData>);

impl PartialEq for Algebra {
    fn eq(&self, other: &Algebra) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.descriptor == other.0.descriptor
    }
}

impl Eq for Algebra {}

impl Algebra {
    pub fn new(descriptor: AlgebraDescriptor) -> Result<Algebra> {
        make_algebra(descriptor)
    }

    pub fn commutative(field: Field, variables: &[&str], ideal: Vec<Vec<u32>>) -> Result<Algebra> {
        make_algebra(AlgebraDescriptor {
            field,
            kind: AlgebraKind::Commutative {
                variables: variables.iter().map(|s| s.to_string()).collect(),
                ideal,
            },
        })
    }

    /// Truncated polynomial ring `F[x_1..x_n]/(x_1^{k_1}, …, x_n^{k_n})`.
    pub fn truncated(field: Field, variables: &[&str], powers: &[u32]) -> Result<Algebra> {
        let n = powers.len();
        let ideal = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = powers[i];
                e
            })
            .collect();
        Algebra::commutative(field, variables, ideal)
    }

    /// The ideal words are written with the variable names, e.g. `"YY"` when
    /// every name is a single character, or as `"Y*Y"`.
    pub fn noncommutative(
        field: Field,
        variables: &[&str],
        ideal: &[&str],
        max_word_length: Option<usize>,
    ) -> Result<Algebra> {
        let variables: Vec<String> = variables.iter().map(|s| s.to_string()).collect();
        let ideal = ideal
            .iter()
            .map(|w| parse_word(&variables, w))
            .collect::<Result<Vec<_>>>()?;
        make_algebra(AlgebraDescriptor {
            field,
            kind: AlgebraKind::Noncommutative {
                variables,
                ideal,
                max_word_length,
            },
        })
    }

    pub fn structure_constants(
        field: Field,
        labels: &[&str],
        table: Vec<Vec<Vec<Scalar>>>,
        unit: usize,
    ) -> Result<Algebra> {
        make_algebra(AlgebraDescriptor {
            field,
            kind: AlgebraKind::StructureConstants {
                labels: labels.iter().map(|s| s.to_string()).collect(),
                table,
                unit,
            },
        })
    }

    /// `F^k` with componentwise product, presented in the basis
    /// `{one, e2, …, ek}` of the unit and the last `k − 1` coordinate
    /// idempotents (the first idempotent is `one − e2 − … − ek`).
    pub fn product_of_fields(field: Field, k: usize) -> Result<Algebra> {
        if k == 0 {
            return Err(Error::BadDescriptor("empty product of fields".into()));
        }
        let mut labels = vec!["one".to_string()];
        labels.extend((2..=k).map(|i| format!("e{i}")));
        let mut table = vec![vec![vec![field.zero(); k]; k]; k];
        for i in 0..k {
            for j in 0..k {
                if i == 0 {
                    table[i][j][j] = field.one();
                } else if j == 0 || i == j {
                    table[i][j][i] = field.one();
                }
            }
        }
        let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
        Algebra::structure_constants(field, &refs, table, 0)
    }

    /// The matrix algebra `M_n(F)` in the basis `{one} ∪ {E_ij : (i,j) ≠ (1,1)}`
    /// (labels `Eij`, 1-based); `E11 = one − E22 − … − Enn`.
    pub fn matrices(field: Field, n: usize) -> Result<Algebra> {
        if n == 0 {
            return Err(Error::BadDescriptor("matrix size must be positive".into()));
        }
        let mut units: Vec<(usize, usize)> = vec![(0, 0)];
        for i in 0..n {
            for j in 0..n {
                if (i, j) != (0, 0) {
                    units.push((i, j));
                }
            }
        }
        // Basis element k as an n×n matrix.
        let as_matrix = |k: usize| -> Vec<Vec<i64>> {
            let mut m = vec![vec![0i64; n]; n];
            if k == 0 {
                (0..n).for_each(|i| m[i][i] = 1);
            } else {
                let (i, j) = units[k];
                m[i][j] = 1;
            }
            m
        };
        let dim = units.len();
        let mut table = vec![vec![vec![field.zero(); dim]; dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                let (x, y) = (as_matrix(a), as_matrix(b));
                let mut p = vec![vec![0i64; n]; n];
                for i in 0..n {
                    for j in 0..n {
                        p[i][j] = (0..n).map(|k| x[i][k] * y[k][j]).sum();
                    }
                }
                for (k, &(i, j)) in units.iter().enumerate() {
                    let c = if k == 0 {
                        p[0][0]
                    } else if i == j {
                        p[i][i] - p[0][0]
                    } else {
                        p[i][j]
                    };
                    table[a][b][k] = field.int(c);
                }
            }
        }
        let labels: Vec<String> = units
            .iter()
            .enumerate()
            .map(|(k, &(i, j))| if k == 0 { "one".to_string() } else { format!("E{}{}", i + 1, j + 1) })
            .collect();
        let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
        Algebra::structure_constants(field, &refs, table, 0)
    }

    pub fn exp_poly() -> Algebra {
        make_algebra(AlgebraDescriptor {
            field: Field::Rational,
            kind: AlgebraKind::ExpPoly,
        })
        .expect("exponential polynomials over Q")
    }

    pub fn descriptor(&self) -> &AlgebraDescriptor {
        &self.0.descriptor
    }

    pub fn kind(&self) -> &AlgebraKind {
        &self.0.descriptor.kind
    }

    pub fn field(&self) -> Field {
        self.0.descriptor.field
    }

    pub fn is_commutative(&self) -> bool {
        self.0.commutative
    }

    pub fn warnings(&self) -> &[String] {
        &self.0.warnings
    }

    /// `Some(d)` for finite-dimensional algebras.
    pub fn dim(&self) -> Option<usize> {
        self.0.basis.as_ref().map(Vec::len)
    }

    pub fn basis(&self) -> Option<&[Monomial]> {
        self.0.basis.as_deref()
    }

    pub fn require_finite(&self) -> Result<usize> {
        self.dim().ok_or(Error::InfiniteDimensional)
    }

    /// Names usable in element expressions.
    pub fn variables(&self) -> Vec<String> {
        match self.kind() {
            AlgebraKind::Commutative { variables, .. } | AlgebraKind::Noncommutative { variables, .. } => {
                variables.clone()
            }
            AlgebraKind::StructureConstants { labels, .. } => labels.clone(),
            AlgebraKind::ExpPoly => vec!["x".to_string()],
        }
    }

    pub fn zero(&self) -> Element {
        Element::from_terms(self.clone(), BTreeMap::new())
    }

    pub fn one(&self) -> Element {
        self.scalar(self.field().one())
    }

    pub fn scalar(&self, s: Scalar) -> Element {
        self.monomial_element(self.unit_monomial(), s)
    }

    pub fn int(&self, n: i64) -> Element {
        self.scalar(self.field().int(n))
    }

    pub(crate) fn unit_monomial(&self) -> Monomial {
        match self.kind() {
            AlgebraKind::Commutative { variables, .. } => Monomial::Exponents(vec![0; variables.len()]),
            AlgebraKind::Noncommutative { .. } => Monomial::Word(Vec::new()),
            AlgebraKind::StructureConstants { unit, .. } => Monomial::Basis(*unit),
            AlgebraKind::ExpPoly => Monomial::Exp {
                rate: BigRational::zero(),
                degree: 0,
            },
        }
    }

    /// `s·m` reduced to normal form (zero if `m` lies in the ideal).
    pub fn monomial_element(&self, m: Monomial, s: Scalar) -> Element {
        let mut terms = BTreeMap::new();
        if !s.is_zero() && self.is_standard(&m) {
            terms.insert(m, s);
        }
        Element::from_terms(self.clone(), terms)
    }

    /// The `i`-th generator (variable) or, for structure constants, basis vector.
    pub fn generator(&self, i: usize) -> Element {
        let one = self.field().one();
        let m = match self.kind() {
            AlgebraKind::Commutative { variables, .. } => {
                let mut e = vec![0; variables.len()];
                e[i] = 1;
                Monomial::Exponents(e)
            }
            AlgebraKind::Noncommutative { .. } => Monomial::Word(vec![i]),
            AlgebraKind::StructureConstants { .. } => Monomial::Basis(i),
            AlgebraKind::ExpPoly => Monomial::Exp {
                rate: BigRational::zero(),
                degree: 1,
            },
        };
        self.monomial_element(m, one)
    }

    pub fn var(&self, name: &str) -> Result<Element> {
        let vars = self.variables();
        let i = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(self.generator(i))
    }

    /// `x^degree · e^{rate·x}` in the exponential-polynomial algebra.
    pub fn exp_term(&self, rate: BigRational, degree: u32) -> Element {
        self.monomial_element(Monomial::Exp { rate, degree }, self.field().one())
    }

    pub fn basis_element(&self, i: usize) -> Result<Element> {
        let basis = self.basis().ok_or(Error::InfiniteDimensional)?;
        let m = basis.get(i).ok_or(Error::DimensionMismatch {
            expected: basis.len(),
            found: i,
        })?;
        Ok(self.monomial_element(m.clone(), self.field().one()))
    }

    pub fn basis_elements(&self) -> Result<Vec<Element>> {
        let d = self.require_finite()?;
        (0..d).map(|i| self.basis_element(i)).collect()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.0.index.get(m).copied()
    }

    pub fn from_coords(&self, v: &[Scalar]) -> Result<Element> {
        let basis = self.basis().ok_or(Error::InfiniteDimensional)?;
        if v.len() != basis.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                found: v.len(),
            });
        }
        let terms = basis
            .iter()
            .zip(v)
            .filter(|(_, s)| !s.is_zero())
            .map(|(m, s)| (m.clone(), s.clone()))
            .collect();
        Ok(Element::from_terms(self.clone(), terms))
    }

    pub fn coords(&self, e: &Element) -> Result<Vec<Scalar>> {
        if e.algebra() != self {
            return Err(Error::AlgebraMismatch);
        }
        let d = self.require_finite()?;
        let mut v = vec![self.field().zero(); d];
        for (m, s) in e.terms() {
            let i = self.index_of(m).ok_or_else(|| Error::Internal(format!("monomial {m:?} not in basis")))?;
            v[i] = s.clone();
        }
        Ok(v)
    }

    /// Elements of a subspace given in coordinates.
    pub fn subspace_elements(&self, s: &Subspace) -> Result<Vec<Element>> {
        s.basis().iter().map(|v| self.from_coords(v)).collect()
    }

    pub fn span(&self, elements: &[Element]) -> Result<Subspace> {
        let d = self.require_finite()?;
        let vectors = elements.iter().map(|e| self.coords(e)).collect::<Result<Vec<_>>>()?;
        Subspace::from_spanning(self.field(), d, vectors)
    }

    /// Carries the terms of an element of another presentation with the same
    /// monomial kind into this algebra, dropping monomials that are not
    /// standard here (e.g. words beyond a length truncation).
    pub fn project(&self, e: &Element) -> Element {
        let terms = e
            .terms()
            .iter()
            .filter(|(m, _)| self.is_standard(m))
            .map(|(m, s)| (m.clone(), s.clone()))
            .collect();
        Element::from_terms(self.clone(), terms)
    }

    /// Matrix (column convention) of a linear map given on basis elements.
    pub fn matrix_of_map(&self, f: impl Fn(&Element) -> Result<Element>) -> Result<Matrix> {
        let d = self.require_finite()?;
        let cols = self
            .basis_elements()?
            .iter()
            .map(|b| self.coords(&f(b)?))
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_columns(self.field(), d, &cols)
    }

    /// Matrix of `x ↦ a·x`.
    pub fn left_mult_matrix(&self, a: &Element) -> Result<Matrix> {
        self.matrix_of_map(|b| a.checked_mul(b))
    }

    /// Matrix of `x ↦ x·a`.
    pub fn right_mult_matrix(&self, a: &Element) -> Result<Matrix> {
        self.matrix_of_map(|b| b.checked_mul(a))
    }

    /// Whether `m` survives the ideal (and the word-length truncation).
    pub(crate) fn is_standard(&self, m: &Monomial) -> bool {
        match (self.kind(), m) {
            (AlgebraKind::Commutative { ideal, .. }, Monomial::Exponents(e)) => {
                !ideal.iter().any(|g| divides(g, e))
            }
            (
                AlgebraKind::Noncommutative {
                    ideal,
                    max_word_length,
                    ..
                },
                Monomial::Word(w),
            ) => max_word_length.map_or(true, |l| w.len() <= l) && !ideal.iter().any(|g| contains_factor(w, g)),
            (AlgebraKind::StructureConstants { labels, .. }, Monomial::Basis(i)) => *i < labels.len(),
            (AlgebraKind::ExpPoly, Monomial::Exp { .. }) => true,
            _ => false,
        }
    }

    /// Product of two standard monomials, as a list of reduced terms.
    pub(crate) fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Vec<(Monomial, Scalar)> {
        let one = self.field().one();
        let m = match (self.kind(), a, b) {
            (AlgebraKind::Commutative { .. }, Monomial::Exponents(x), Monomial::Exponents(y)) => {
                Monomial::Exponents(x.iter().zip(y).map(|(p, q)| p + q).collect())
            }
            (AlgebraKind::Noncommutative { .. }, Monomial::Word(x), Monomial::Word(y)) => {
                Monomial::Word(x.iter().chain(y).copied().collect())
            }
            (AlgebraKind::StructureConstants { table, .. }, Monomial::Basis(i), Monomial::Basis(j)) => {
                return table[*i][*j]
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| !s.is_zero())
                    .map(|(k, s)| (Monomial::Basis(k), s.clone()))
                    .collect();
            }
            (
                AlgebraKind::ExpPoly,
                Monomial::Exp { rate: r1, degree: d1 },
                Monomial::Exp { rate: r2, degree: d2 },
            ) => Monomial::Exp {
                rate: r1 + r2,
                degree: d1 + d2,
            },
            _ => panic!("monomial kinds do not match the algebra"),
        };
        if self.is_standard(&m) {
            vec![(m, one)]
        } else {
            Vec::new()
        }
    }

    /// Standard monomials of degree ≤ `max_degree` (for exponential
    /// polynomials: `x^j e^{λx}` with `j ≤ max_degree`, `λ ∈ {−2..2}`).
    /// On finite-dimensional algebras this is the part of the basis within
    /// the degree bound.
    pub fn monomials_up_to(&self, max_degree: usize) -> Vec<Monomial> {
        if let Some(b) = self.basis() {
            return b.iter().filter(|m| m.degree() <= max_degree).cloned().collect();
        }
        match self.kind() {
            AlgebraKind::Commutative { variables, .. } => {
                let n = variables.len();
                let mut out = Vec::new();
                let mut e = vec![0u32; n];
                loop {
                    let m = Monomial::Exponents(e.clone());
                    if self.is_standard(&m) {
                        out.push(m);
                    }
                    let mut i = 0;
                    loop {
                        if i == n {
                            return out;
                        }
                        e[i] += 1;
                        if e.iter().map(|&k| k as usize).sum::<usize>() <= max_degree {
                            break;
                        }
                        e[i] = 0;
                        i += 1;
                    }
                }
            }
            AlgebraKind::Noncommutative { variables, ideal, .. } => {
                let mut out = vec![Monomial::Word(Vec::new())];
                let mut level: Vec<Vec<usize>> = vec![Vec::new()];
                for _ in 0..max_degree {
                    let mut next = Vec::new();
                    for w in &level {
                        for v in 0..variables.len() {
                            let mut w2 = w.clone();
                            w2.push(v);
                            if !ideal.iter().any(|g| w2.ends_with(g)) {
                                next.push(w2);
                            }
                        }
                    }
                    out.extend(next.iter().cloned().map(Monomial::Word));
                    level = next;
                }
                out
            }
            AlgebraKind::ExpPoly => (-2i64..=2)
                .flat_map(|r| {
                    (0..=max_degree as u32).map(move |degree| Monomial::Exp {
                        rate: BigRational::from_integer(r.into()),
                        degree,
                    })
                })
                .collect(),
            AlgebraKind::StructureConstants { .. } => unreachable!("structure constants are finite"),
        }
    }

    /// Parses an element expression; see the crate docs for the grammar.
    pub fn parse(&self, text: &str) -> Result<Element> {
        parse::parse_element(self, text)
    }
}

fn divides(g: &[u32], e: &[u32]) -> bool {
    g.iter().zip(e).all(|(a, b)| a <= b)
}

pub(crate) fn contains_factor(w: &[usize], g: &[usize]) -> bool {
    g.len() <= w.len() && w.windows(g.len()).any(|win| win == g)
}

fn parse_word(variables: &[String], text: &str) -> Result<Vec<usize>> {
    let text = text.trim();
    let pieces: Vec<String> = if text.contains('*') {
        text.split('*').map(|s| s.trim().to_string()).collect()
    } else if variables.iter().all(|v| v.chars().count() == 1) {
        text.chars().filter(|c| !c.is_whitespace()).map(String::from).collect()
    } else {
        vec![text.to_string()]
    };
    pieces
        .iter()
        .map(|p| {
            variables
                .iter()
                .position(|v| v == p)
                .ok_or_else(|| Error::UnknownVariable(p.clone()))
        })
        .collect()
}

/// Validates and normalizes a descriptor, enumerating the monomial basis when finite.
pub fn make_algebra(descriptor: AlgebraDescriptor) -> Result<Algebra> {
    let mut descriptor = descriptor;
    let field = descriptor.field;
    let mut warnings = Vec::new();
    let (basis, commutative) = match &mut descriptor.kind {
        AlgebraKind::Commutative { variables, ideal } => {
            check_names(variables)?;
            for g in ideal.iter() {
                if g.len() != variables.len() {
                    return Err(Error::BadDescriptor(format!(
                        "ideal generator {g:?} has {} exponents for {} variables",
                        g.len(),
                        variables.len()
                    )));
                }
                if g.iter().all(|&e| e == 0) {
                    return Err(Error::BadDescriptor("ideal contains 1".into()));
                }
            }
            let reduced = reduce_generators(ideal, |a, b| divides(a, b));
            if reduced.len() != ideal.len() {
                warnings.push("ideal generating set was not reduced; redundant generators dropped".into());
            }
            *ideal = reduced;
            (commutative_basis(variables.len(), ideal)?, true)
        }
        AlgebraKind::Noncommutative {
            variables,
            ideal,
            max_word_length,
        } => {
            check_names(variables)?;
            for g in ideal.iter() {
                if g.is_empty() {
                    return Err(Error::BadDescriptor("ideal contains 1".into()));
                }
                if g.iter().any(|&i| i >= variables.len()) {
                    return Err(Error::BadDescriptor(format!("word {g:?} uses an unknown variable")));
                }
            }
            let reduced = reduce_generators(ideal, |a, b| contains_factor(b, a));
            if reduced.len() != ideal.len() {
                warnings.push("ideal generating set was not reduced; redundant generators dropped".into());
            }
            *ideal = reduced;
            let basis = word_basis(variables.len(), ideal, *max_word_length)?;
            let commutative = variables.len() <= 1 || basis.as_ref().is_some_and(|b| words_commute(b, ideal, *max_word_length));
            (basis, commutative)
        }
        AlgebraKind::StructureConstants { labels, table, unit } => {
            check_names(labels)?;
            let d = labels.len();
            if d > DIM_LIMIT {
                return Err(Error::BadDescriptor(format!("dimension {d} exceeds limit {DIM_LIMIT}")));
            }
            validate_table(field, d, table, *unit)?;
            let commutative = (0..d).all(|i| (0..d).all(|j| table[i][j] == table[j][i]));
            (Some((0..d).map(Monomial::Basis).collect()), commutative)
        }
        AlgebraKind::ExpPoly => {
            if !field.is_rational() {
                return Err(Error::FieldUnsupported(field.to_string()));
            }
            (None, true)
        }
    };
    let index = basis
        .iter()
        .flatten()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();
    Ok(Algebra(Arc::new(AlgebraData {
        descriptor,
        basis,
        index,
        commutative,
        warnings,
    })))
}

fn check_names(names: &[String]) -> Result<()> {
    for (i, n) in names.iter().enumerate() {
        let mut chars = n.chars();
        let ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok || n == "E" {
            return Err(Error::BadDescriptor(format!("invalid variable name `{n}`")));
        }
        if names[..i].contains(n) {
            return Err(Error::BadDescriptor(format!("duplicate variable name `{n}`")));
        }
    }
    Ok(())
}

// Drops duplicates and generators made redundant by another (`covers(a, b)`:
// `a` makes `b` redundant).
fn reduce_generators<T: Clone + PartialEq + Ord>(gens: &[T], covers: impl Fn(&T, &T) -> bool) -> Vec<T> {
    let mut sorted: Vec<T> = gens.to_vec();
    sorted.sort();
    sorted.dedup();
    sorted
        .iter()
        .filter(|b| !sorted.iter().any(|a| a != *b && covers(a, b)))
        .cloned()
        .collect()
}

fn commutative_basis(n: usize, ideal: &[Vec<u32>]) -> Result<Option<Vec<Monomial>>> {
    // Finite iff every variable has a pure-power generator.
    let mut bounds = Vec::with_capacity(n);
    for i in 0..n {
        let pure = ideal
            .iter()
            .filter(|g| g.iter().enumerate().all(|(j, &e)| j == i || e == 0))
            .map(|g| g[i])
            .min();
        match pure {
            Some(k) => bounds.push(k),
            None => return Ok(None),
        }
    }
    let total: usize = bounds.iter().map(|&b| b as usize).product();
    if total > DIM_LIMIT * 64 {
        return Err(Error::BadDescriptor(format!("quotient too large ({total} candidate monomials)")));
    }
    let mut out = Vec::new();
    let mut e = vec![0u32; n];
    loop {
        if !ideal.iter().any(|g| divides(g, &e)) {
            out.push(Monomial::Exponents(e.clone()));
        }
        // Mixed-radix increment with the first variable varying fastest.
        let mut i = 0;
        loop {
            if i == n {
                if out.len() > DIM_LIMIT {
                    return Err(Error::BadDescriptor(format!("dimension exceeds limit {DIM_LIMIT}")));
                }
                return Ok(Some(out));
            }
            e[i] += 1;
            if e[i] < bounds[i] {
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}

// Standard words by length then lexicographically. Without a length bound
// the set is infinite as soon as a standard word is at least as long as the
// number of trie states of the ideal (a state must repeat, so the word pumps).
fn word_basis(n: usize, ideal: &[Vec<usize>], max_len: Option<usize>) -> Result<Option<Vec<Monomial>>> {
    let pump_bound = 1 + ideal.iter().map(Vec::len).sum::<usize>();
    let mut out: Vec<Monomial> = vec![Monomial::Word(Vec::new())];
    let mut level: Vec<Vec<usize>> = vec![Vec::new()];
    let mut len = 0;
    loop {
        if max_len.is_some_and(|l| len == l) {
            return Ok(Some(out));
        }
        if max_len.is_none() && len >= pump_bound {
            return Ok(None);
        }
        let mut next = Vec::new();
        for w in &level {
            for v in 0..n {
                let mut w2 = w.clone();
                w2.push(v);
                // Only suffixes can newly contain a generator.
                if !ideal.iter().any(|g| w2.ends_with(g)) {
                    next.push(w2);
                }
            }
        }
        if next.is_empty() {
            return Ok(Some(out));
        }
        out.extend(next.iter().cloned().map(Monomial::Word));
        if out.len() > DIM_LIMIT {
            return match max_len {
                Some(_) => Err(Error::BadDescriptor(format!("dimension exceeds limit {DIM_LIMIT}"))),
                None => Ok(None),
            };
        }
        level = next;
        len += 1;
    }
}

fn words_commute(basis: &[Monomial], ideal: &[Vec<usize>], max_len: Option<usize>) -> bool {
    let standard = |w: &Vec<usize>| max_len.map_or(true, |l| w.len() <= l) && !ideal.iter().any(|g| contains_factor(w, g));
    basis.iter().all(|a| {
        basis.iter().all(|b| {
            let (Monomial::Word(x), Monomial::Word(y)) = (a, b) else {
                return false;
            };
            let xy: Vec<usize> = x.iter().chain(y).copied().collect();
            let yx: Vec<usize> = y.iter().chain(x).copied().collect();
            match (standard(&xy), standard(&yx)) {
                (false, false) => true,
                (true, true) => xy == yx,
                _ => false,
            }
        })
    })
}

fn validate_table(field: Field, d: usize, table: &[Vec<Vec<Scalar>>], unit: usize) -> Result<()> {
    if table.len() != d || table.iter().any(|r| r.len() != d || r.iter().any(|v| v.len() != d)) {
        return Err(Error::BadDescriptor("multiplication table must be d x d x d".into()));
    }
    if table.iter().flatten().flatten().any(|s| s.field() != field) {
        return Err(Error::FieldMismatch(field.to_string(), "table entry".into()));
    }
    if unit >= d {
        return Err(Error::BadUnit(format!("unit index {unit} out of range")));
    }
    for j in 0..d {
        for k in 0..d {
            let expected = if j == k { field.one() } else { field.zero() };
            if table[unit][j][k] != expected || table[j][unit][k] != expected {
                return Err(Error::BadUnit(format!("e_{unit} does not act as identity on e_{j}")));
            }
        }
    }
    // (e_i e_j) e_k = e_i (e_j e_k) for all triples.
    let product = |x: &[Scalar], y: &[Scalar]| -> Vec<Scalar> {
        let mut out = vec![field.zero(); d];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let c = xa * yb;
                for (o, t) in out.iter_mut().zip(&table[a][b]) {
                    if !t.is_zero() {
                        *o = &*o + &(&c * t);
                    }
                }
            }
        }
        out
    };
    let basis_vec = |i: usize| {
        let mut v = vec![field.zero(); d];
        v[i] = field.one();
        v
    };
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let left = product(&table[i][j], &basis_vec(k));
                let right = product(&basis_vec(i), &table[j][k]);
                if left != right {
                    return Err(Error::NonAssociativeTable(i, j, k));
                }
            }
        }
    }
    Ok(())
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = self.field();
        match self.kind() {
            AlgebraKind::Commutative { variables, ideal } => {
                write!(f, "{field}[{}]", variables.join(","))?;
                if !ideal.is_empty() {
                    let gens: Vec<String> = ideal.iter().map(|g| element::format_exponents(variables, g)).collect();
                    write!(f, "/({})", gens.join(", "))?;
                }
                Ok(())
            }
            AlgebraKind::Noncommutative {
                variables,
                ideal,
                max_word_length,
            } => {
                write!(f, "{field}<{}>", variables.join(","))?;
                let mut gens: Vec<String> = ideal
                    .iter()
                    .map(|g| g.iter().map(|&i| variables[i].as_str()).collect::<Vec<_>>().join("*"))
                    .collect();
                if let Some(l) = max_word_length {
                    gens.push(format!("words of length > {l}"));
                }
                if !gens.is_empty() {
                    write!(f, "/({})", gens.join(", "))?;
                }
                Ok(())
            }
            AlgebraKind::StructureConstants { labels, .. } => {
                write!(f, "{field}-algebra with basis {{{}}}", labels.join(", "))
            }
            AlgebraKind::ExpPoly => write!(f, "{field}-span of x^j*e^(lambda*x)"),
        }
    }
}
