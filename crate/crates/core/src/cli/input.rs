//! JSON description of an algebra, its derivations, an operator and sample
//! elements.
//!
//! ```json
//! {
//!   "name": "word algebra",
//!   "field": {"kind": "rational"},
//!   "kind": "noncommutative",
//!   "variables": ["X", "Y"],
//!   "ideal": ["YY"],
//!   "derivations": [{"name": "dX", "images": {"X": "1", "Y": "0"}}],
//!   "operator": [{"exponent": [0], "coefficient": "1"}, {"exponent": [1], "coefficient": "-X"}],
//!   "elements": ["X*Y"],
//!   "witness": {"a": "X*Y", "b": "X", "c": "1"}
//! }
//! ```
//!
//! `ideal` holds exponent vectors for commutative algebras and words for
//! noncommutative ones. A derivation is given by generator `images`, an
//! `euler` weight vector, or a `matrix` whose `j`-th column is `D(e_j)`. On
//! exponential polynomials, `images` must name `x` and `{"x": "g"}` is `g·d/dx`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Deserialize;

use crate::algebra::{Algebra, AlgebraKind, Element};
use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::exactmath::{parse_rational, Field, Matrix, Scalar};
use crate::weylop::OperatorPolynomial;

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Int(i64),
    Text(String),
}

impl Number {
    fn scalar(&self, f: Field) -> Result<Scalar> {
        match self {
            Number::Int(k) => Ok(f.int(*k)),
            Number::Text(s) => {
                let q = parse_rational(s.trim()).ok_or_else(|| Error::Schema(format!("not a rational number: {s:?}")))?;
                f.rational(&q)
            }
        }
    }

    fn text(&self) -> String {
        match self {
            Number::Int(k) => k.to_string(),
            Number::Text(s) => s.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum KindTag {
    Commutative,
    Noncommutative,
    StructureConstants,
    ExpPoly,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum IdealGenerator {
    Exponents(Vec<u32>),
    Word(String),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureSpec {
    pub dim: usize,
    #[serde(default)]
    pub labels: Option<Vec<String>>,
    pub unit: usize,
    pub table: Vec<Vec<Vec<Number>>>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivationSpec {
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub images: Option<BTreeMap<String, String>>,
    #[serde(default)]
    pub euler: Option<Vec<i64>>,
    #[serde(default)]
    pub matrix: Option<Vec<Vec<Number>>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub exponent: Vec<u32>,
    pub coefficient: Number,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessSpec {
    pub a: String,
    pub b: String,
    pub c: String,
}

fn rational_field() -> Field {
    Field::Rational
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default = "rational_field")]
    pub field: Field,
    pub kind: KindTag,
    #[serde(default)]
    pub variables: Vec<String>,
    #[serde(default)]
    pub ideal: Vec<IdealGenerator>,
    #[serde(default)]
    pub max_word_length: Option<usize>,
    #[serde(default)]
    pub structure: Option<StructureSpec>,
    #[serde(default)]
    pub derivations: Vec<DerivationSpec>,
    #[serde(default)]
    pub operator: Option<Vec<TermSpec>>,
    #[serde(default)]
    pub elements: Vec<String>,
    #[serde(default)]
    pub witness: Option<WitnessSpec>,
}

/// A validated input file.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub name: String,
    pub algebra: Algebra,
    pub derivations: Arc<Vec<Derivation>>,
    pub operator: Option<OperatorPolynomial>,
    pub elements: Vec<Element>,
    pub witness: Option<(Element, Element, Element)>,
}

impl AlgebraFile {
    pub fn from_json(text: &str) -> Result<AlgebraFile> {
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn build_algebra(&self) -> Result<Algebra> {
        let f = match self.field {
            Field::Rational => Field::Rational,
            Field::Prime { p } => Field::prime(p)?,
        };
        let names: Vec<&str> = self.variables.iter().map(String::as_str).collect();
        match self.kind {
            KindTag::Commutative => {
                let ideal = self
                    .ideal
                    .iter()
                    .map(|g| match g {
                        IdealGenerator::Exponents(e) if e.len() == names.len() => Ok(e.clone()),
                        IdealGenerator::Exponents(e) => Err(Error::DimensionMismatch {
                            expected: names.len(),
                            found: e.len(),
                        }),
                        IdealGenerator::Word(w) => {
                            Err(Error::Schema(format!("commutative ideal generators are exponent vectors, got {w:?}")))
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                Algebra::commutative(f, &names, ideal)
            }
            KindTag::Noncommutative => {
                let words = self
                    .ideal
                    .iter()
                    .map(|g| match g {
                        IdealGenerator::Word(w) => Ok(w.as_str()),
                        IdealGenerator::Exponents(_) => {
                            Err(Error::Schema("noncommutative ideal generators are words".into()))
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                Algebra::noncommutative(f, &names, &words, self.max_word_length)
            }
            KindTag::StructureConstants => {
                let s = self
                    .structure
                    .as_ref()
                    .ok_or_else(|| Error::Schema("structure_constants needs a \"structure\" object".into()))?;
                if s.table.len() != s.dim || s.table.iter().any(|r| r.len() != s.dim || r.iter().any(|v| v.len() != s.dim)) {
                    return Err(Error::Schema(format!("table must be {0} x {0} x {0}", s.dim)));
                }
                let table = s
                    .table
                    .iter()
                    .map(|r| r.iter().map(|v| v.iter().map(|x| x.scalar(f)).collect()).collect())
                    .collect::<Result<Vec<Vec<Vec<Scalar>>>>>()?;
                let labels: Vec<String> = match &s.labels {
                    Some(l) if l.len() == s.dim => l.clone(),
                    Some(l) => {
                        return Err(Error::DimensionMismatch {
                            expected: s.dim,
                            found: l.len(),
                        })
                    }
                    None => (0..s.dim).map(|i| format!("e{i}")).collect(),
                };
                let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
                Algebra::structure_constants(f, &refs, table, s.unit)
            }
            KindTag::ExpPoly => {
                if !f.is_rational() {
                    return Err(Error::FieldUnsupported("exponential polynomials need the rational field".into()));
                }
                Ok(Algebra::exp_poly())
            }
        }
    }

    fn build_derivation(&self, alg: &Algebra, i: usize, spec: &DerivationSpec) -> Result<Derivation> {
        let given = [spec.images.is_some(), spec.euler.is_some(), spec.matrix.is_some()];
        if given.iter().filter(|&&b| b).count() != 1 {
            return Err(Error::Schema(format!("derivation {i}: give exactly one of images, euler, matrix")));
        }
        let d = if let Some(images) = &spec.images {
            if matches!(alg.kind(), AlgebraKind::ExpPoly) {
                match images.get("x") {
                    Some(g) if images.len() == 1 => Derivation::exp_poly(alg, alg.parse(g)?)?,
                    _ => return Err(Error::Schema("exponential-polynomial derivations are given as {\"x\": g}".into())),
                }
            } else {
                let pairs: Vec<(&str, &str)> = images.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect();
                Derivation::from_image_strings(alg, &pairs)?
            }
        } else if let Some(w) = &spec.euler {
            Derivation::euler(alg, w)?
        } else {
            let rows = spec.matrix.as_ref().unwrap();
            let f = alg.field();
            let rows = rows
                .iter()
                .map(|r| r.iter().map(|x| x.scalar(f)).collect())
                .collect::<Result<Vec<Vec<Scalar>>>>()?;
            Derivation::from_matrix(alg, Matrix::from_rows(f, rows)?)?
        };
        Ok(match &spec.name {
            Some(n) => d.with_name(n),
            None => d,
        })
    }

    pub fn load(&self) -> Result<Loaded> {
        let algebra = self.build_algebra()?;
        let derivations = self
            .derivations
            .iter()
            .enumerate()
            .map(|(i, s)| self.build_derivation(&algebra, i, s))
            .collect::<Result<Vec<_>>>()?;
        let operator = match &self.operator {
            None => None,
            Some(terms) => {
                let arity = derivations.len();
                if let Some(t) = terms.iter().find(|t| t.exponent.len() != arity) {
                    return Err(Error::ArityMismatch {
                        expected: arity,
                        found: t.exponent.len(),
                    });
                }
                let texts: Vec<(Vec<u32>, String)> = terms.iter().map(|t| (t.exponent.clone(), t.coefficient.text())).collect();
                let refs: Vec<(Vec<u32>, &str)> = texts.iter().map(|(e, s)| (e.clone(), s.as_str())).collect();
                Some(OperatorPolynomial::parse_terms(&algebra, arity, &refs)?)
            }
        };
        let elements = self.elements.iter().map(|s| algebra.parse(s)).collect::<Result<Vec<_>>>()?;
        let witness = match &self.witness {
            None => None,
            Some(w) => Some((algebra.parse(&w.a)?, algebra.parse(&w.b)?, algebra.parse(&w.c)?)),
        };
        Ok(Loaded {
            name: self.name.clone().unwrap_or_else(|| algebra.to_string()),
            algebra,
            derivations: Arc::new(derivations),
            operator,
            elements,
            witness,
        })
    }
}

pub fn load_file(path: &std::path::Path) -> Result<Loaded> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Schema(format!("{}: {e}", path.display())))?;
    AlgebraFile::from_json(&text)?.load()
}
