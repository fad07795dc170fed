use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{Algebra, AlgebraKind};
use crate::error::{Error, Result};
use crate::exactmath::Scalar;

/// A standard monomial of one of the supported presentations.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Monomial {
    Exponents(Vec<u32>),
    Word(Vec<usize>),
    Basis(usize),
    /// `x^degree · e^{rate·x}`.
    Exp { rate: BigRational, degree: u32 },
}

impl Monomial {
    /// Total degree (commutative), word length (noncommutative), `x`-degree
    /// (exponential polynomials); zero for structure-constant basis vectors.
    pub fn degree(&self) -> usize {
        match self {
            Monomial::Exponents(e) => e.iter().map(|&k| k as usize).sum(),
            Monomial::Word(w) => w.len(),
            Monomial::Basis(_) => 0,
            Monomial::Exp { degree, .. } => *degree as usize,
        }
    }
}

/// An element in normal form: standard monomials with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    algebra: Algebra,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Element {
    pub(crate) fn from_terms(algebra: Algebra, terms: BTreeMap<Monomial, Scalar>) -> Element {
        debug_assert!(terms.values().all(|s| !s.is_zero()));
        Element { algebra, terms }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.algebra.field().zero())
    }

    /// Coefficient of the unit monomial.
    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&self.algebra.unit_monomial())
    }

    pub fn is_one(&self) -> bool {
        *self == self.algebra.one()
    }

    /// Whether the element is a scalar multiple of the unit.
    pub fn is_scalar(&self) -> bool {
        let u = self.algebra.unit_monomial();
        self.terms.keys().all(|m| *m == u)
    }

    /// Largest monomial degree among the terms (`None` for zero).
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }

    fn same(&self, other: &Element) -> Result<()> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    fn add_term(terms: &mut BTreeMap<Monomial, Scalar>, m: Monomial, s: Scalar) {
        if s.is_zero() {
            return;
        }
        match terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(s);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &s;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Element) -> Result<Element> {
        self.same(other)?;
        let mut terms = self.terms.clone();
        for (m, s) in &other.terms {
            Element::add_term(&mut terms, m.clone(), s.clone());
        }
        Ok(Element::from_terms(self.algebra.clone(), terms))
    }

    pub fn checked_sub(&self, other: &Element) -> Result<Element> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Element) -> Result<Element> {
        self.same(other)?;
        let mut terms = BTreeMap::new();
        for (a, s) in &self.terms {
            for (b, t) in &other.terms {
                let st = s * t;
                for (m, c) in self.algebra.mul_monomials(a, b) {
                    Element::add_term(&mut terms, m, &st * &c);
                }
            }
        }
        Ok(Element::from_terms(self.algebra.clone(), terms))
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        if s.is_zero() {
            return self.algebra.zero();
        }
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect();
        Element::from_terms(self.algebra.clone(), terms)
    }

    pub fn scale_int(&self, n: i64) -> Element {
        self.scale(&self.algebra.field().int(n))
    }

    /// `self^k` by repeated squaring (powers of one element commute).
    pub fn pow(&self, k: u32) -> Element {
        let mut acc = self.algebra.one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Applies `f` termwise: `Σ c_m f(m)`.
    pub fn map_terms(&self, f: impl Fn(&Monomial) -> Element) -> Element {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            for (m2, c2) in f(m).terms {
                Element::add_term(&mut terms, m2, c * &c2);
            }
        }
        Element::from_terms(self.algebra.clone(), terms)
    }

    pub(crate) fn format_monomial(&self, m: &Monomial) -> String {
        match (self.algebra.kind(), m) {
            (AlgebraKind::Commutative { variables, .. }, Monomial::Exponents(e)) => format_exponents(variables, e),
            (AlgebraKind::Noncommutative { variables, .. }, Monomial::Word(w)) => {
                if w.is_empty() {
                    "1".to_string()
                } else {
                    w.iter().map(|&i| variables[i].as_str()).collect::<Vec<_>>().join("*")
                }
            }
            (AlgebraKind::StructureConstants { labels, .. }, Monomial::Basis(i)) => labels[*i].clone(),
            (AlgebraKind::ExpPoly, Monomial::Exp { rate, degree }) => {
                let mut parts = Vec::new();
                match degree {
                    0 => {}
                    1 => parts.push("x".to_string()),
                    d => parts.push(format!("x^{d}")),
                }
                if !rate.is_zero() {
                    let r = if rate.is_integer() {
                        rate.numer().to_string()
                    } else {
                        format!("{}/{}", rate.numer(), rate.denom())
                    };
                    parts.push(format!("E({r})"));
                }
                if parts.is_empty() {
                    "1".to_string()
                } else {
                    parts.join("*")
                }
            }
            _ => format!("{m:?}"),
        }
    }
}

pub fn format_exponents(variables: &[String], e: &[u32]) -> String {
    let parts: Vec<String> = variables
        .iter()
        .zip(e)
        .filter(|(_, &k)| k > 0)
        .map(|(v, &k)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for Element {
    /// Prints in the same syntax accepted by `Algebra::parse`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let unit = self.algebra.unit_monomial();
        // Structure-constant units print as their label; elsewhere the unit is implicit.
        let unit_implicit = !matches!(self.algebra.kind(), AlgebraKind::StructureConstants { .. });
        let ordered: Vec<(&Monomial, &Scalar)> = self
            .algebra
            .basis()
            .map(|b| b.iter().filter_map(|m| self.terms.get_key_value(m)).collect())
            .unwrap_or_else(|| self.terms.iter().collect());
        for (i, (m, c)) in ordered.into_iter().enumerate() {
            let neg = c.as_rational().is_some_and(|q| q.is_negative());
            let mag = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let is_unit = *m == unit && unit_implicit;
            match (is_unit, mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{}", self.format_monomial(m))?,
                (false, false) => write!(f, "{mag}*{}", self.format_monomial(m))?,
            }
        }
        Ok(())
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Element::from_terms(self.algebra.clone(), terms)
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

// Operator forms panic on elements of different algebras; the `checked_*`
// methods report `AlgebraMismatch` instead.
macro_rules! element_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Element> for &Element {
            type Output = Element;
            fn $method(self, rhs: &Element) -> Element {
                self.$checked(rhs).expect("elements of different algebras")
            }
        }
        impl $tr<Element> for Element {
            type Output = Element;
            fn $method(self, rhs: Element) -> Element {
                (&self).$checked(&rhs).expect("elements of different algebras")
            }
        }
        impl $tr<&Element> for Element {
            type Output = Element;
            fn $method(self, rhs: &Element) -> Element {
                (&self).$checked(rhs).expect("elements of different algebras")
            }
        }
        impl $tr<Element> for &Element {
            type Output = Element;
            fn $method(self, rhs: Element) -> Element {
                self.$checked(&rhs).expect("elements of different algebras")
            }
        }
    };
}

element_binop!(Add, add, checked_add);
element_binop!(Sub, sub, checked_sub);
element_binop!(Mul, mul, checked_mul);

#[cfg(test)]
mod tests {
    use crate::algebra::Algebra;
    use crate::exactmath::Field;

    const Q: Field = Field::Rational;

    #[test]
    fn word_quotient_arithmetic() {
        let a = Algebra::noncommutative(Q, &["X", "Y"], &["YY"], None).unwrap();
        let x = a.var("X").unwrap();
        let y = a.var("Y").unwrap();
        let xy = &x * &y;
        assert!((&xy * &y).is_zero());
        for m in 1..=10 {
            let p = xy.pow(m);
            assert!(!p.is_zero());
            assert!((&p * &y).is_zero());
        }
    }

    #[test]
    fn truncated_polynomials() {
        let a = Algebra::truncated(Q, &["x"], &[3]).unwrap();
        let x = a.var("x").unwrap();
        assert!((&x * &x.pow(2)).is_zero());
        let s = (&a.one() + &x).pow(2);
        assert_eq!(s, a.parse("1 + 2*x + x^2").unwrap());
    }

    #[test]
    fn exp_poly_product() {
        let e = Algebra::exp_poly();
        let p = &e.parse("x*E(1)").unwrap() * &e.parse("E(2)").unwrap();
        assert_eq!(p, e.parse("x*E(3)").unwrap());
        assert_eq!(p.to_string(), "x*E(3)");
    }

    #[test]
    fn mismatched_algebras() {
        let a = Algebra::truncated(Q, &["x"], &[3]).unwrap();
        let b = Algebra::truncated(Q, &["x"], &[4]).unwrap();
        assert!(a.one().checked_add(&b.one()).is_err());
    }

    #[test]
    fn display_signs() {
        let a = Algebra::truncated(Q, &["x", "y"], &[3, 3]).unwrap();
        let e = a.parse("-1 + 3/2*x*y - y^2").unwrap();
        assert_eq!(e.to_string(), "-1 + 3/2*x*y - y^2");
    }
}
