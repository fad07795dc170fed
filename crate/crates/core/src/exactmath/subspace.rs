use crate::error::{Error, Result};
use crate::exactmath::matrix::Matrix;
use crate::exactmath::scalar::{Field, Scalar};

/// A linear subspace of `field^n`, stored as the nonzero rows of its RREF.
/// Two subspaces are equal exactly when their stored bases are identical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient_dim: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient_dim: usize) -> Subspace {
        Subspace {
            field,
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient_dim: usize) -> Subspace {
        let id = Matrix::identity(field, ambient_dim);
        Subspace {
            field,
            ambient_dim,
            basis: id.to_rows(),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn from_spanning(field: Field, ambient_dim: usize, vectors: Vec<Vec<Scalar>>) -> Result<Subspace> {
        if vectors.is_empty() {
            return Ok(Subspace::zero(field, ambient_dim));
        }
        for v in &vectors {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: v.len(),
                });
            }
        }
        let rref = Matrix::from_rows(field, vectors)?.rref();
        let basis = (0..rref.rank).map(|i| rref.matrix.row(i).to_vec()).collect();
        Ok(Subspace {
            field,
            ambient_dim,
            basis,
            pivots: rref.pivots,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    fn compatible(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        Ok(())
    }

    /// Residue of `v` after eliminating the pivot coordinates; zero iff `v` lies in the span.
    pub fn reduce(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: v.len(),
            });
        }
        let mut r = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let c = r[p].clone();
            for (x, b) in r.iter_mut().zip(row) {
                if !b.is_zero() {
                    *x = x.checked_sub(&(&c * b))?;
                }
            }
        }
        Ok(r)
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(Scalar::is_zero))
    }

    /// Coordinates of `v` in the stored basis, or `None` if `v` is outside the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if !self.contains(v)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&p| v[p].clone()).collect()))
    }

    pub fn is_subset(&self, other: &Subspace) -> Result<bool> {
        self.compatible(other)?;
        for b in &self.basis {
            if !other.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        let vectors = self.basis.iter().chain(&other.basis).cloned().collect();
        Subspace::from_spanning(self.field, self.ambient_dim, vectors)
    }

    /// Intersection via the kernel of the stacked system `Σ aᵢuᵢ − Σ bⱼwⱼ = 0`.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.field, self.ambient_dim));
        }
        let mut columns: Vec<Vec<Scalar>> = self.basis.clone();
        columns.extend(other.basis.iter().map(|w| w.iter().map(|s| -s).collect()));
        let system = Matrix::from_columns(self.field, self.ambient_dim, &columns)?;
        let k = self.dim();
        let vectors = system
            .kernel()
            .basis()
            .iter()
            .map(|sol| {
                let mut v = vec![self.field.zero(); self.ambient_dim];
                for (a, u) in sol[..k].iter().zip(&self.basis) {
                    for (x, y) in v.iter_mut().zip(u) {
                        *x = &*x + &(a * y);
                    }
                }
                v
            })
            .collect();
        Subspace::from_spanning(self.field, self.ambient_dim, vectors)
    }

    /// Image of the subspace under a linear map given as a matrix acting on column vectors.
    pub fn image_under(&self, m: &Matrix) -> Result<Subspace> {
        if m.cols() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: m.cols(),
            });
        }
        let vectors = self.basis.iter().map(|b| m.mul_vec(b)).collect::<Result<Vec<_>>>()?;
        Subspace::from_spanning(self.field, m.rows(), vectors)
    }

    /// Matrix with the basis vectors as rows.
    pub fn basis_matrix(&self) -> Matrix {
        if self.basis.is_empty() {
            return Matrix::zeros(self.field, 0, self.ambient_dim);
        }
        Matrix::from_rows(self.field, self.basis.clone()).expect("basis is well-formed")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Q.int(x)).collect()
    }

    #[test]
    fn zero_is_subset_of_everything() {
        let z = Subspace::zero(Q, 3);
        let s = Subspace::from_spanning(Q, 3, vec![v(&[1, 2, 3])]).unwrap();
        assert!(z.is_subset(&s).unwrap());
        assert!(z.is_subset(&z).unwrap());
    }

    #[test]
    fn sum_of_axes_is_full() {
        let e1 = Subspace::from_spanning(Q, 2, vec![v(&[1, 0])]).unwrap();
        let e2 = Subspace::from_spanning(Q, 2, vec![v(&[0, 1])]).unwrap();
        assert_eq!(e1.sum(&e2).unwrap(), Subspace::full(Q, 2));
    }

    #[test]
    fn intersection_example() {
        let a = Subspace::from_spanning(Q, 2, vec![v(&[1, 1]), v(&[1, -1])]).unwrap();
        let b = Subspace::from_spanning(Q, 2, vec![v(&[1, 0])]).unwrap();
        assert_eq!(a.intersection(&b).unwrap(), b);
        let c = Subspace::from_spanning(Q, 3, vec![v(&[1, 0, 0]), v(&[0, 1, 0])]).unwrap();
        let d = Subspace::from_spanning(Q, 3, vec![v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap();
        let i = c.intersection(&d).unwrap();
        assert_eq!(i, Subspace::from_spanning(Q, 3, vec![v(&[0, 5, 0])]).unwrap());
    }

    #[test]
    fn canonical_equality() {
        let a = Subspace::from_spanning(Q, 3, vec![v(&[1, 2, 3]), v(&[0, 1, 1])]).unwrap();
        let b = Subspace::from_spanning(Q, 3, vec![v(&[1, 3, 4]), v(&[2, 5, 7]), v(&[0, 0, 0])]).unwrap();
        assert_eq!(a, b);
        assert!(a.contains(&v(&[1, 1, 2])).unwrap());
        assert!(!a.contains(&v(&[0, 0, 1])).unwrap());
    }

    #[test]
    fn mismatched_dimensions() {
        let a = Subspace::zero(Q, 2);
        let b = Subspace::zero(Q, 3);
        assert!(matches!(a.sum(&b), Err(Error::DimensionMismatch { .. })));
    }
}
