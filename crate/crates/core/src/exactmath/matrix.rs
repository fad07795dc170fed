use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::exactmath::poly::UniPoly;
use crate::exactmath::scalar::{Field, Scalar};
use crate::exactmath::subspace::Subspace;

/// Dense row-major matrix over a single field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Result of Gauss–Jordan elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: c,
                    found: row.len(),
                });
            }
            for s in row {
                if s.field() != field {
                    return Err(Error::FieldMismatch(field.to_string(), s.field().to_string()));
                }
                data.push(s);
            }
        }
        Ok(Matrix {
            field,
            rows: r,
            cols: c,
            data,
        })
    }

    /// Convenience constructor from small integers.
    pub fn from_ints(field: Field, rows: &[&[i64]]) -> Matrix {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.int(v)).collect())
            .collect();
        Matrix::from_rows(field, rows).expect("ragged integer matrix")
    }

    /// Builds a matrix whose `j`-th column is `columns[j]` (all of length `rows`).
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Result<Matrix> {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: col.len(),
                });
            }
            for (i, s) in col.iter().enumerate() {
                m[(i, j)] = s.clone();
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = &out[(i, j)] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix { data, ..self.clone() })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.add(&other.scale(&-self.field.one()))
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            data: self.data.iter().map(|a| a * s).collect(),
            ..self.clone()
        }
    }

    /// `self - λ·I`.
    pub fn shift(&self, lambda: &Scalar) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut m = self.clone();
        for i in 0..self.rows {
            m[(i, i)] = &m[(i, i)] - lambda;
        }
        Ok(m)
    }

    pub fn pow(&self, k: u32) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = Matrix::identity(self.field, self.rows);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Reduced row-echelon form. The result is unique for the row space.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m[(r, c)].inv().expect("nonzero pivot");
            for j in c..m.cols {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let delta = &factor * &m[(r, j)];
                    m[(i, j)] = &m[(i, j)] - &delta;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            matrix: m,
            rank: pivots.len(),
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Null space `{v : M v = 0}` as a canonical subspace of `field^cols`.
    pub fn kernel(&self) -> Subspace {
        let rref = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !rref.pivots.contains(c)).collect();
        let vectors = free
            .iter()
            .map(|&fc| {
                let mut v = vec![self.field.zero(); self.cols];
                v[fc] = self.field.one();
                for (row, &pc) in rref.pivots.iter().enumerate() {
                    v[pc] = -&rref.matrix[(row, fc)];
                }
                v
            })
            .collect();
        Subspace::from_spanning(self.field, self.cols, vectors).expect("kernel vectors are well-formed")
    }

    /// Some solution of `M x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let rows = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i].clone());
                r
            })
            .collect();
        let rref = Matrix::from_rows(self.field, rows)?.rref();
        if rref.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (row, &pc) in rref.pivots.iter().enumerate() {
            x[pc] = rref.matrix[(row, self.cols)].clone();
        }
        Ok(Some(x))
    }

    /// Column space as a canonical subspace of `field^rows`.
    pub fn image(&self) -> Subspace {
        let cols = (0..self.cols).map(|j| self.column(j)).collect();
        Subspace::from_spanning(self.field, self.rows, cols).expect("columns are well-formed")
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn det_bareiss(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.field.one());
        }
        let mut m = self.clone();
        let mut prev = self.field.one();
        let mut negate = false;
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                    return Ok(self.field.zero());
                };
                m.swap_rows(p, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[(i, j)] * &m[(k, k)]) - &(&m[(i, k)] * &m[(k, j)]);
                    m[(i, j)] = num.checked_div(&prev)?;
                }
                m[(i, k)] = self.field.zero();
            }
            prev = m[(k, k)].clone();
        }
        let d = m[(n - 1, n - 1)].clone();
        Ok(if negate { -d } else { d })
    }

    /// Minimal polynomial as the lcm of the Krylov minimal polynomials of the
    /// standard basis vectors.
    pub fn minimal_polynomial(&self) -> Result<UniPoly> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = UniPoly::one(self.field);
        for j in 0..self.rows {
            let mut e = vec![self.field.zero(); self.rows];
            e[j] = self.field.one();
            acc = acc.lcm(&self.vector_minimal_polynomial(&e)?);
        }
        Ok(acc)
    }

    /// Monic polynomial `q` of least degree with `q(M) v = 0`.
    pub fn vector_minimal_polynomial(&self, v: &[Scalar]) -> Result<UniPoly> {
        let f = self.field;
        // Each entry is (pivot, reduced vector, combination of powers that produced it).
        let mut echelon: Vec<(usize, Vec<Scalar>, Vec<Scalar>)> = Vec::new();
        let mut current = v.to_vec();
        for k in 0..=self.rows {
            let mut r = current.clone();
            let mut combo = vec![f.zero(); k + 1];
            combo[k] = f.one();
            for (p, row, c) in &echelon {
                if r[*p].is_zero() {
                    continue;
                }
                let s = r[*p].clone();
                for (x, y) in r.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x = &*x - &(&s * y);
                    }
                }
                for (x, y) in combo.iter_mut().zip(c) {
                    if !y.is_zero() {
                        *x = &*x - &(&s * y);
                    }
                }
            }
            match r.iter().position(|x| !x.is_zero()) {
                None => return Ok(UniPoly::new(f, combo)),
                Some(p) => {
                    let inv = r[p].inv().expect("nonzero pivot");
                    let row = r.iter().map(|x| x * &inv).collect();
                    let combo = combo.iter().map(|x| x * &inv).collect();
                    echelon.push((p, row, combo));
                }
            }
            current = self.mul_vec(&current)?;
        }
        Err(Error::Internal("Krylov sequence did not terminate".into()))
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, s) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{s}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn rref_examples() {
        let r = Matrix::from_ints(Q, &[&[1, 1], &[1, 2]]).rref();
        assert_eq!(r.matrix, Matrix::identity(Q, 2));
        assert_eq!(r.rank, 2);

        let r = Matrix::zeros(Q, 2, 2).rref();
        assert_eq!(r.rank, 0);
        assert!(r.matrix.is_zero());

        let r = Matrix::from_ints(Q, &[&[1, 2], &[2, 4]]).rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.matrix.row(0), Matrix::from_ints(Q, &[&[1, 2]]).row(0));
        assert!(r.matrix.row(1).iter().all(Scalar::is_zero));
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(Q, 3).kernel().dim(), 0);
        assert_eq!(Matrix::zeros(Q, 2, 3).kernel(), Subspace::full(Q, 3));
        let k = Matrix::from_ints(Q, &[&[1, 2]]).kernel();
        assert_eq!(k.dim(), 1);
        // RREF of span{(-2, 1)} is (1, -1/2).
        assert_eq!(k.basis()[0], vec![Q.int(1), Q.ratio(-1, 2).unwrap()]);
    }

    #[test]
    fn bareiss_examples() {
        assert_eq!(Matrix::from_ints(Q, &[&[1, 1], &[1, 2]]).det_bareiss().unwrap(), Q.int(1));
        assert_eq!(Matrix::identity(Q, 5).det_bareiss().unwrap(), Q.int(1));
        let m = Matrix::from_ints(Q, &[&[1, 1, 2], &[1, 2, 6], &[2, 6, 24]]);
        assert_eq!(m.det_bareiss().unwrap(), Q.int(4));
        let swap = Matrix::from_ints(Q, &[&[0, 1], &[1, 0]]);
        assert_eq!(swap.det_bareiss().unwrap(), Q.int(-1));
        assert!(matches!(
            Matrix::zeros(Q, 2, 3).det_bareiss(),
            Err(Error::NonSquare { .. })
        ));
    }

    #[test]
    fn minimal_polynomial_of_diagonal() {
        let m = Matrix::from_ints(Q, &[&[0, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let p = m.minimal_polynomial().unwrap();
        // t(t - 1) = t^2 - t
        assert_eq!(p, UniPoly::new(Q, vec![Q.int(0), Q.int(-1), Q.int(1)]));
        let z = Matrix::zeros(Q, 2, 2).minimal_polynomial().unwrap();
        assert_eq!(z, UniPoly::new(Q, vec![Q.int(0), Q.int(1)]));
    }

    #[test]
    fn matrix_pow_and_shift() {
        let n = Matrix::from_ints(Q, &[&[0, 1], &[0, 0]]);
        assert!(n.pow(2).unwrap().is_zero());
        assert_eq!(n.pow(0).unwrap(), Matrix::identity(Q, 2));
        let s = n.shift(&Q.int(2)).unwrap();
        assert_eq!(s, Matrix::from_ints(Q, &[&[-2, 1], &[0, -2]]));
    }
}
