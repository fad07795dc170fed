//! Differential Vandermonde determinants `det(D^{i−1}(f^j))` over a
//! commutative algebra, and what they say about radicals of kernels.

use num_bigint::BigInt;
use num_traits::One;
use serde_json::json;

use crate::algebra::{AlgebraKind, Element, Nilpotency};
use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::exactmath::{factorial, Field, Matrix};
use crate::kerrad::is_zero_divisor;
use crate::report::{Check, Report, Status};
use crate::weylop::OperatorPolynomial;

/// `∏_{k=1}^{n−1} k!`.
pub fn alpha(n: usize) -> BigInt {
    (1..n as u64).map(factorial).fold(BigInt::one(), |a, b| a * b)
}

/// The `n × n` matrix with entry `(i, j) = D^{i−1}(f^j)`, `1 ≤ i, j ≤ n`.
#[derive(Clone, Debug)]
pub struct DiffVandermondeMatrix {
    pub f: Element,
    pub derivation: Derivation,
    pub n: usize,
    pub entries: Vec<Vec<Element>>,
}

pub fn build_matrix(f: &Element, d: &Derivation, n: usize) -> Result<DiffVandermondeMatrix> {
    if !f.algebra().is_commutative() {
        return Err(Error::Noncommutative);
    }
    if f.algebra() != d.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    if n == 0 {
        return Err(Error::BadDescriptor("matrix size must be at least 1".into()));
    }
    let mut rows: Vec<Vec<Element>> = vec![(1..=n as u32).map(|j| f.pow(j)).collect()];
    for _ in 1..n {
        let next = rows.last().unwrap().iter().map(|e| d.apply(e)).collect::<Result<_>>()?;
        rows.push(next);
    }
    Ok(DiffVandermondeMatrix {
        f: f.clone(),
        derivation: d.clone(),
        n,
        entries: rows,
    })
}

impl DiffVandermondeMatrix {
    pub fn alpha(&self) -> BigInt {
        alpha(self.n)
    }

    pub fn determinant(&self) -> Result<Element> {
        element_det(&self.entries)
    }

    /// `α_n (Df)^{n(n−1)/2} f^n`.
    pub fn closed_form(&self) -> Result<Element> {
        let alg = self.f.algebra();
        let df = self.derivation.apply(&self.f)?;
        let n = self.n as u32;
        let c = alg.scalar(alg.field().bigint(&self.alpha()));
        Ok(&(&c * &df.pow(n * (n - 1) / 2)) * &self.f.pow(n))
    }
}

fn square_dim(m: &[Vec<Element>]) -> Result<Option<usize>> {
    let n = m.len();
    if let Some(row) = m.iter().find(|r| r.len() != n) {
        return Err(Error::NonSquare {
            rows: n,
            cols: row.len(),
        });
    }
    match m.first().and_then(|r| r.first()) {
        None => Ok(None),
        Some(e) if !e.algebra().is_commutative() => Err(Error::Noncommutative),
        Some(_) => Ok(Some(n)),
    }
}

/// Determinant over the commutative ring of elements, by Berkowitz's
/// division-free algorithm (`O(n^4)` ring operations).
pub fn element_det(m: &[Vec<Element>]) -> Result<Element> {
    let Some(n) = square_dim(m)? else {
        return Err(Error::BadDescriptor("empty matrix has no algebra".into()));
    };
    let alg = m[0][0].algebra().clone();
    // Characteristic polynomial coefficients of the leading r × r block,
    // highest degree first.
    let mut coeffs = vec![alg.one()];
    for r in 0..n {
        let mut t = vec![alg.one(), -&m[r][r]];
        let mut v: Vec<Element> = (0..r).map(|i| m[i][r].clone()).collect();
        for _ in 0..r {
            let dot = (0..r).fold(alg.zero(), |acc, j| &acc + &(&m[r][j] * &v[j]));
            t.push(-&dot);
            v = (0..r)
                .map(|i| (0..r).fold(alg.zero(), |acc, j| &acc + &(&m[i][j] * &v[j])))
                .collect();
        }
        coeffs = (0..r + 2)
            .map(|i| (0..=i.min(r)).fold(alg.zero(), |acc, j| &acc + &(&t[i - j] * &coeffs[j])))
            .collect();
    }
    let c = coeffs.pop().unwrap();
    Ok(if n % 2 == 0 { c } else { -&c })
}

/// Laplace expansion along the first row. Exponential cost; kept as a
/// reference for small sizes.
pub fn cofactor_det(m: &[Vec<Element>]) -> Result<Element> {
    let Some(n) = square_dim(m)? else {
        return Err(Error::BadDescriptor("empty matrix has no algebra".into()));
    };
    if n == 1 {
        return Ok(m[0][0].clone());
    }
    let mut acc = m[0][0].algebra().zero();
    for j in 0..n {
        let minor: Vec<Vec<Element>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, e)| e.clone()).collect())
            .collect();
        let term = &m[0][j] * &cofactor_det(&minor)?;
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    Ok(acc)
}

/// `det(D^{i−1}(f^j)) = α_n (Df)^{n(n−1)/2} f^n`; for `n ≤ 6` the
/// determinant is also compared with the cofactor expansion.
pub fn vandermonde_det_check(f: &Element, d: &Derivation, n: usize) -> Result<Report> {
    let vm = build_matrix(f, d, n)?;
    let det = vm.determinant()?;
    let rhs = vm.closed_form()?;
    let mut report = Report::new();
    let name = format!("differential Vandermonde determinant n={n}");
    report.push(if det == rhs {
        Check::pass(name, format!("f = {f}, det = {det}"))
    } else {
        Check::fail(name, "determinant differs from the closed form")
            .with_counterexample(json!({"f": f.to_string(), "det": det.to_string(), "closed_form": rhs.to_string()}))
    });
    if n <= 6 {
        let reference = cofactor_det(&vm.entries)?;
        report.push(Check::verdict(
            format!("determinant agrees with cofactor expansion n={n}"),
            reference == det,
            format!("cofactor value {reference}"),
        ));
    }
    Ok(report)
}

/// Column-reduction coefficients `α_{k,j}`, `1 ≤ j ≤ k−1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaTable {
    pub k: usize,
    /// `coefficients[j − 1] = α_{k,j}`.
    pub coefficients: Vec<BigInt>,
}

impl AlphaTable {
    pub fn get(&self, j: usize) -> &BigInt {
        &self.coefficients[j - 1]
    }
}

/// Tables for `k = 2..=k_max`, from `α_{2,1} = 1` and
/// `α_{k+1,1} = −α_{k,1}`, `α_{k+1,j} = α_{k,j−1} − α_{k,j}` (`2 ≤ j ≤ k−1`),
/// `α_{k+1,k} = 1 + α_{k,k−1}`.
pub fn alpha_recursion(k_max: usize) -> Vec<AlphaTable> {
    let mut out = vec![AlphaTable {
        k: 2,
        coefficients: vec![BigInt::one()],
    }];
    for k in 2..k_max {
        let a = &out.last().unwrap().coefficients;
        let mut next = vec![-&a[0]];
        for j in 2..k {
            next.push(&a[j - 2] - &a[j - 1]);
        }
        next.push(BigInt::one() + &a[k - 2]);
        out.push(AlphaTable {
            k: k + 1,
            coefficients: next,
        });
    }
    out.truncate(k_max.saturating_sub(1));
    out
}

/// `D^i(f^k) − Σ_j α_{k,j} f^{k−j} D^i(f^j) = δ_{i,k−1} (k−1)! (Df)^{k−1} f`
/// for `0 ≤ i ≤ k−1`.
pub fn column_reduction_check(f: &Element, d: &Derivation, k: usize) -> Result<Check> {
    if k < 2 {
        return Err(Error::BadDescriptor("column reduction needs k >= 2".into()));
    }
    let alg = f.algebra();
    let table = alpha_recursion(k).pop().unwrap();
    let name = format!("column reduction k={k}");
    let df = d.apply(f)?;
    for i in 0..k as u32 {
        let mut lhs = d.apply_power(&f.pow(k as u32), i)?;
        for j in 1..k {
            let c = alg.field().bigint(table.get(j));
            lhs = &lhs - &(&f.pow((k - j) as u32) * &d.apply_power(&f.pow(j as u32), i)?).scale(&c);
        }
        let rhs = if i as usize == k - 1 {
            (&df.pow(i) * f).scale(&alg.field().bigint(&factorial(i as u64)))
        } else {
            alg.zero()
        };
        if lhs != rhs {
            return Ok(Check::fail(name, format!("fails at i = {i}"))
                .with_counterexample(json!({"f": f.to_string(), "lhs": lhs.to_string(), "rhs": rhs.to_string()})));
        }
    }
    Ok(Check::pass(name, format!("f = {f}, all 0 <= i <= {}", k - 1)))
}

/// `det((i+j−2)!)_{1≤i,j≤n} = (∏_{k=1}^{n−1} k!)²` for `n = 1..=n_max`.
pub fn factorial_hankel_check(n_max: usize) -> Result<Report> {
    let q = Field::Rational;
    let mut report = Report::new();
    for n in 1..=n_max {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| q.bigint(&factorial((i + j) as u64))).collect())
            .collect();
        let det = Matrix::from_rows(q, rows)?.det_bareiss()?;
        let a = alpha(n);
        let expected = q.bigint(&(&a * &a));
        report.push(Check::verdict(
            format!("factorial Hankel determinant n={n}"),
            det == expected,
            format!("det = {det}, expected {expected}"),
        ));
    }
    Ok(report)
}

fn apply_univariate(p: &OperatorPolynomial, d: &Derivation, g: &Element) -> Result<Element> {
    let mut acc = g.algebra().zero();
    for (k, c) in p.terms() {
        acc = &acc + &(c * &d.apply_power(g, k[0])?);
    }
    Ok(acc)
}

fn check_univariate(p: &OperatorPolynomial, d: &Derivation) -> Result<usize> {
    if p.arity() != 1 {
        return Err(Error::ArityMismatch {
            expected: 1,
            found: p.arity(),
        });
    }
    if p.algebra() != d.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    if !p.algebra().is_commutative() {
        return Err(Error::Noncommutative);
    }
    Ok(p.degree().unwrap_or(0))
}

/// First `m ≤ d+1` with `P(D)(f^m) ≠ 0`.
fn hypothesis_failure(p: &OperatorPolynomial, d: &Derivation, f: &Element, deg: usize) -> Result<Option<u32>> {
    for m in 1..=deg as u32 + 1 {
        if !apply_univariate(p, d, &f.pow(m))?.is_zero() {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// If `f^m ∈ Ker P(D)` for `1 ≤ m ≤ d+1` with `P = Σ c_i ξ^i`, then
/// `α_{d+1} c_i (Df)^{d(d+1)/2} f^{d+1} = 0` for every `i`.
pub fn vandermonde_radical_check(p: &OperatorPolynomial, d: &Derivation, f: &Element) -> Result<Report> {
    let deg = check_univariate(p, d)?;
    let name = format!("coefficients kill (Df)^{} f^{}", deg * (deg + 1) / 2, deg + 1);
    let mut report = Report::new();
    if let Some(m) = hypothesis_failure(p, d, f, deg)? {
        report.push(Check::new(name, Status::HypothesisNotMet, format!("P(D)(f^{m}) != 0 for f = {f}")));
        return Ok(report);
    }
    let alg = f.algebra();
    let core = &d.apply(f)?.pow((deg * (deg + 1) / 2) as u32) * &f.pow(deg as u32 + 1);
    let core = core.scale(&alg.field().bigint(&alpha(deg + 1)));
    let mut bad = Vec::new();
    for (k, c) in p.terms() {
        let v = c * &core;
        if !v.is_zero() {
            bad.push(json!({"i": k[0], "c_i": c.to_string(), "product": v.to_string()}));
        }
    }
    report.push(if bad.is_empty() {
        Check::pass(name, format!("f = {f}, all {} coefficients", p.terms().len()))
    } else {
        Check::fail(name, "a product is nonzero").with_counterexample(json!(bad))
    });
    Ok(report)
}

fn is_regular(c: &Element) -> Result<bool> {
    match c.algebra().kind() {
        // Exponential polynomials form an integral domain.
        AlgebraKind::ExpPoly => Ok(!c.is_zero()),
        _ => Ok(!is_zero_divisor(c)?),
    }
}

/// Under the same hypothesis, if some `c_i` is not a zero-divisor then
/// `(f Df)^m = 0` for all `m ≥ max{d+1, d(d+1)/2}`.
pub fn f_df_nilpotent_check(p: &OperatorPolynomial, d: &Derivation, f: &Element) -> Result<Report> {
    let deg = check_univariate(p, d)?;
    let bound = (deg + 1).max(deg * (deg + 1) / 2) as u32;
    let name = format!("f Df is nilpotent of index <= {bound}");
    let mut report = Report::new();
    if let Some(m) = hypothesis_failure(p, d, f, deg)? {
        report.push(Check::new(name, Status::HypothesisNotMet, format!("P(D)(f^{m}) != 0 for f = {f}")));
        return Ok(report);
    }
    let mut regular = false;
    for c in p.terms().values() {
        if is_regular(c)? {
            regular = true;
            break;
        }
    }
    if !regular {
        report.push(Check::new(name, Status::HypothesisNotMet, "every coefficient is a zero-divisor"));
        return Ok(report);
    }
    let g = f * &d.apply(f)?;
    report.push(match g.is_nilpotent(bound) {
        Nilpotency::Yes(k) => Check::pass(name, format!("f Df = {g}, index {k}")),
        _ => Check::fail(name, format!("(f Df)^{bound} != 0")).with_counterexample(json!({"f": f.to_string(), "fDf": g.to_string()})),
    });
    Ok(report)
}
