//! Dense complex linear algebra for matrices up to a few hundred rows.
//!
//! No symmetry is assumed anywhere: the Hamiltonians of interest are
//! non-Hermitian and their propagators are not unitary.

mod eigen;
mod expm;
mod logm;

pub use eigen::{eig_dense, eigenvalues, EigenDecomposition, DEFECTIVE_CONDITION, RESIDUAL_TOL};
pub use expm::{expm, EXPM_NORM_CAP};
pub use logm::{
    floquet_decompose, floquet_log, fold_quasienergy, quasienergy_from_multiplier,
    FloquetDecomposition,
};

use crate::error::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

/// Square complex matrix with finite entries.
///
/// Construction through [`ComplexMatrix::new`] or
/// [`ComplexMatrix::from_rows`] validates shape and finiteness; arithmetic
/// between valid matrices is assumed to stay finite.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix(DMatrix<Complex64>);

impl ComplexMatrix {
    pub fn new(inner: DMatrix<Complex64>) -> Result<Self> {
        let (rows, cols) = inner.shape();
        if rows != cols || rows == 0 {
            return Err(Error::NotSquare { rows, cols });
        }
        for col in 0..cols {
            for row in 0..rows {
                let z = inner[(row, col)];
                if !(z.re.is_finite() && z.im.is_finite()) {
                    return Err(Error::NonFinite { row, col });
                }
            }
        }
        Ok(Self(inner))
    }

    /// Builds a `dim x dim` matrix from row-major entries.
    pub fn from_rows(dim: usize, entries: &[Complex64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                left: dim * dim,
                right: entries.len(),
            });
        }
        Self::new(DMatrix::from_row_slice(dim, dim, entries))
    }

    pub(crate) fn from_rows_unchecked(dim: usize, entries: &[Complex64]) -> Self {
        Self(DMatrix::from_row_slice(dim, dim, entries))
    }

    pub(crate) fn from_inner(inner: DMatrix<Complex64>) -> Self {
        debug_assert!(inner.is_square());
        Self(inner)
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be >= 1");
        Self(DMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be >= 1");
        Self(DMatrix::identity(dim, dim))
    }

    pub fn from_fn(dim: usize, f: impl FnMut(usize, usize) -> Complex64) -> Result<Self> {
        Self::new(DMatrix::from_fn(dim, dim, f))
    }

    pub fn from_diagonal(values: &[Complex64]) -> Result<Self> {
        let n = values.len();
        Self::from_fn(n, |i, j| {
            if i == j {
                values[i]
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_inner(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<Complex64> {
        self.0
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn conjugate(&self) -> Self {
        Self(self.0.map(|z| z.conj()))
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Maximum absolute column sum.
    pub fn norm_one(&self) -> f64 {
        self.0
            .column_iter()
            .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self(&self.0 * factor)
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        self.0.column(j).iter().copied().collect()
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim(), "vector length mismatch");
        let n = self.dim();
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for (j, &vj) in v.iter().enumerate() {
            for (i, o) in out.iter_mut().enumerate() {
                *o += self.0[(i, j)] * vj;
            }
        }
        out
    }

    pub fn inverse(&self) -> Result<Self> {
        self.0
            .clone()
            .lu()
            .try_inverse()
            .map(Self)
            .ok_or(Error::SingularMatrix)
    }

    pub fn determinant(&self) -> Complex64 {
        self.0.clone().lu().determinant()
    }

    /// Solves `self * X = rhs`.
    pub fn solve(&self, rhs: &Self) -> Result<Self> {
        if rhs.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: rhs.dim(),
            });
        }
        self.0
            .clone()
            .lu()
            .solve(&rhs.0)
            .map(Self)
            .ok_or(Error::SingularMatrix)
    }

    /// 1-norm condition number `||A||_1 ||A^-1||_1`; infinite when singular.
    pub fn condition_one(&self) -> f64 {
        match self.inverse() {
            Ok(inv) => self.norm_one() * inv.norm_one(),
            Err(_) => f64::INFINITY,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, idx: (usize, usize)) -> &Complex64 {
        &self.0[idx]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, idx: (usize, usize)) -> &mut Complex64 {
        &mut self.0[idx]
    }
}

impl Mul<&ComplexMatrix> for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        ComplexMatrix(&self.0 * &rhs.0)
    }
}

impl Mul for ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: ComplexMatrix) -> ComplexMatrix {
        &self * &rhs
    }
}

impl Add<&ComplexMatrix> for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        ComplexMatrix(&self.0 + &rhs.0)
    }
}

impl Add for ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: ComplexMatrix) -> ComplexMatrix {
        &self + &rhs
    }
}

impl Sub<&ComplexMatrix> for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        ComplexMatrix(&self.0 - &rhs.0)
    }
}

impl Sub for ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: ComplexMatrix) -> ComplexMatrix {
        &self - &rhs
    }
}

impl Neg for ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        ComplexMatrix(-self.0)
    }
}

pub(crate) fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_non_square_and_non_finite() {
        assert!(matches!(
            ComplexMatrix::new(DMatrix::zeros(2, 3)),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        ));
        assert!(matches!(
            ComplexMatrix::new(DMatrix::zeros(0, 0)),
            Err(Error::NotSquare { .. })
        ));
        let bad = [c(1.0, 0.0), c(f64::NAN, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
        assert!(matches!(
            ComplexMatrix::from_rows(2, &bad),
            Err(Error::NonFinite { row: 0, col: 1 })
        ));
    }

    #[test]
    fn row_major_layout() {
        let m = ComplexMatrix::from_rows(2, &[c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0), c(4.0, 0.0)])
            .unwrap();
        assert_eq!(m[(0, 1)], c(2.0, 0.0));
        assert_eq!(m[(1, 0)], c(3.0, 0.0));
        assert_eq!(m.trace(), c(5.0, 0.0));
        assert_eq!(m.norm_one(), 6.0);
        assert!((m.determinant() - c(-2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn inverse_of_singular_fails() {
        let m = ComplexMatrix::from_rows(2, &[c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)])
            .unwrap();
        assert_eq!(m.inverse(), Err(Error::SingularMatrix));
        assert!(m.condition_one().is_infinite());
    }
}
