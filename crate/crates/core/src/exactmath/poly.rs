use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactmath::scalar::{Field, Scalar};

/// Univariate polynomial with scalar coefficients, lowest degree first.
/// Trailing zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> UniPoly {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn zero(field: Field) -> UniPoly {
        UniPoly::new(field, Vec::new())
    }

    pub fn one(field: Field) -> UniPoly {
        UniPoly::new(field, vec![field.one()])
    }

    /// The linear polynomial `t - root`.
    pub fn linear(root: &Scalar) -> UniPoly {
        let f = root.field();
        UniPoly::new(f, vec![-root, f.one()])
    }

    pub fn from_ints(field: Field, coeffs: &[i64]) -> UniPoly {
        UniPoly::new(field, coeffs.iter().map(|&c| field.int(c)).collect())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new(self.field, (0..n).map(|k| &self.coeff(k) + &other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new(self.field, (0..n).map(|k| &self.coeff(k) - &other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPoly::new(self.field, out)
    }

    pub fn scale(&self, s: &Scalar) -> UniPoly {
        UniPoly::new(self.field, self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn pow(&self, k: u32) -> UniPoly {
        (0..k).fold(UniPoly::one(self.field), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.field,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &self.field.int(k as i64))
                .collect(),
        )
    }

    pub fn monic(&self) -> Result<UniPoly> {
        let lead = self.leading().ok_or(Error::DivisionByZero)?;
        let inv = lead.inv().ok_or(Error::DivisionByZero)?;
        Ok(self.scale(&inv))
    }

    /// Euclidean division: `self = q·other + r` with `deg r < deg other`.
    pub fn divrem(&self, other: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let d = other.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = other.leading().and_then(Scalar::inv).ok_or(Error::DivisionByZero)?;
        let mut rem = self.coeffs.clone();
        let Some(top) = self.degree().filter(|&n| n >= d) else {
            return Ok((UniPoly::zero(self.field), self.clone()));
        };
        let mut quot = vec![self.field.zero(); top - d + 1];
        for k in (d..=top).rev() {
            let c = &rem[k] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                rem[k - d + j] = &rem[k - d + j] - &(&c * b);
            }
            quot[k - d] = c;
        }
        Ok((UniPoly::new(self.field, quot), UniPoly::new(self.field, rem)))
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic().expect("nonzero gcd")
        }
    }

    pub fn lcm(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.field);
        }
        let g = self.gcd(other);
        let (q, _) = self.mul(other).divrem(&g).expect("nonzero gcd");
        q.monic().expect("nonzero lcm")
    }

    /// Distinct roots in the base field (unordered multiplicities not computed).
    /// Over ℚ this uses the rational root theorem on the integer-cleared
    /// square-free part; over 𝔽_p it tries every residue.
    pub fn roots(&self) -> Vec<Scalar> {
        if self.is_zero() {
            return Vec::new();
        }
        match self.field {
            Field::Prime { p } => (0..p as i64)
                .map(|v| self.field.int(v))
                .filter(|x| self.eval(x).is_zero())
                .collect(),
            Field::Rational => rational_roots(self),
        }
    }

    /// Multiplicity of `root` as a zero of `self`.
    pub fn multiplicity(&self, root: &Scalar) -> usize {
        let lin = UniPoly::linear(root);
        let mut p = self.clone();
        let mut m = 0;
        while !p.is_zero() {
            let (q, r) = p.divrem(&lin).expect("linear divisor");
            if !r.is_zero() {
                break;
            }
            p = q;
            m += 1;
        }
        m
    }

    /// Factors `self` as `lead · Π (t − λ)^m` over the base field, returning
    /// the roots with multiplicities in increasing order, or
    /// `CharPolyDoesNotSplit` carrying the leftover factor.
    pub fn split(&self) -> Result<Vec<(Scalar, usize)>> {
        let mut rest = self.monic()?;
        let mut out = Vec::new();
        let mut roots = self.roots();
        roots.sort_by(cmp_scalar);
        for r in roots {
            let m = rest.multiplicity(&r);
            let (q, _) = rest.divrem(&UniPoly::linear(&r).pow(m as u32))?;
            rest = q;
            out.push((r, m));
        }
        if rest.degree() != Some(0) {
            return Err(Error::CharPolyDoesNotSplit(rest.to_string()));
        }
        Ok(out)
    }
}

/// Total order used to report roots deterministically.
pub fn cmp_scalar(a: &Scalar, b: &Scalar) -> std::cmp::Ordering {
    match (a, b) {
        (Scalar::Rational(x), Scalar::Rational(y)) => x.cmp(y),
        (Scalar::Prime { value: x, .. }, Scalar::Prime { value: y, .. }) => x.cmp(y),
        _ => a.field().cmp(&b.field()),
    }
}

fn rational_roots(p: &UniPoly) -> Vec<Scalar> {
    let g = p.gcd(&p.derivative());
    let (sf, _) = p.divrem(&g).expect("nonzero gcd");
    let rats: Vec<BigRational> = sf.coeffs.iter().map(|c| c.as_rational().unwrap().clone()).collect();
    let lcm_den = rats.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut ints: Vec<BigInt> = rats.iter().map(|q| q.numer() * (&lcm_den / q.denom())).collect();
    let mut roots = Vec::new();
    if ints.first().is_some_and(Zero::is_zero) {
        roots.push(Field::Rational.zero());
        while ints.first().is_some_and(Zero::is_zero) {
            ints.remove(0);
        }
    }
    if ints.len() <= 1 {
        return roots;
    }
    let a0 = ints[0].abs();
    let an = ints.last().unwrap().abs();
    let num_divs = divisors(&a0);
    let den_divs = divisors(&an);
    let f = Field::Rational;
    for q in &den_divs {
        for n in &num_divs {
            if !n.gcd(q).is_one() {
                continue;
            }
            for sign in [1, -1] {
                let cand = BigRational::new(n * BigInt::from(sign), q.clone());
                let s = f.rational(&cand).unwrap();
                if sf.eval(&s).is_zero() && !roots.contains(&s) {
                    roots.push(s);
                }
            }
        }
    }
    roots
}

const TRIAL_LIMIT: u64 = 1 << 20;

// Positive divisors via trial division. A cofactor left over after trial
// division up to TRIAL_LIMIT is treated as prime; a composite leftover can
// only hide roots with huge numerators, which then surface as a
// non-splitting factor rather than a wrong answer.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut rest = n.clone();
    let mut d = 2u64;
    while d < TRIAL_LIMIT {
        let bd = BigInt::from(d);
        if &bd * &bd > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &bd).is_zero() {
            rest /= &bd;
            e += 1;
        }
        if e > 0 {
            factors.push((bd, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > BigInt::one() {
        factors.push((rest, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (prime, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &prime;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.as_rational().is_some_and(|q| q.is_negative());
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}*t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "{mag}*t^{k}")?,
            }
        }
        Ok(())
    }
}

/// Small helper: `k` as a machine integer when the rational is integral and fits.
pub fn small_integer(q: &BigRational) -> Option<i64> {
    if q.is_integer() {
        q.numer().to_i64()
    } else {
        None
    }
}
