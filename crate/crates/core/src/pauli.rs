//! Pauli matrices and helpers for 2x2 blocks.

use crate::linalg::ComplexMatrix;
use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn identity() -> ComplexMatrix {
    ComplexMatrix::identity(2)
}

pub fn sigma_x() -> ComplexMatrix {
    ComplexMatrix::from_rows_unchecked(2, &[ZERO, ONE, ONE, ZERO])
}

pub fn sigma_y() -> ComplexMatrix {
    ComplexMatrix::from_rows_unchecked(2, &[ZERO, -I, I, ZERO])
}

pub fn sigma_z() -> ComplexMatrix {
    ComplexMatrix::from_rows_unchecked(2, &[ONE, ZERO, ZERO, -ONE])
}

/// `a0 I + a . sigma` for complex coefficients.
pub fn compose(a0: Complex64, a: [Complex64; 3]) -> ComplexMatrix {
    let [ax, ay, az] = a;
    ComplexMatrix::from_rows_unchecked(2, &[a0 + az, ax - I * ay, ax + I * ay, a0 - az])
}

/// Inverse of [`compose`]: `(a0, [ax, ay, az])` of a 2x2 matrix.
pub fn decompose(m: &ComplexMatrix) -> (Complex64, [Complex64; 3]) {
    assert_eq!(m.dim(), 2, "Pauli decomposition needs a 2x2 matrix");
    let (m00, m01, m10, m11) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    let half = Complex64::new(0.5, 0.0);
    (
        half * (m00 + m11),
        [
            half * (m01 + m10),
            half * I * (m01 - m10),
            half * (m00 - m11),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_algebra() {
        let (x, y, z) = (sigma_x(), sigma_y(), sigma_z());
        let id = identity();
        assert!((&x * &x).max_abs_diff(&id) < 1e-15);
        assert!((&y * &y).max_abs_diff(&id) < 1e-15);
        // sigma_x sigma_y = i sigma_z
        assert!((&x * &y).max_abs_diff(&z.scale(I)) < 1e-15);
    }

    #[test]
    fn compose_decompose() {
        let a0 = Complex64::new(0.3, -0.1);
        let a = [
            Complex64::new(1.0, 2.0),
            Complex64::new(-0.5, 0.25),
            Complex64::new(0.0, 0.7),
        ];
        let m = compose(a0, a);
        let (b0, b) = decompose(&m);
        assert!((a0 - b0).norm() < 1e-15);
        for k in 0..3 {
            assert!((a[k] - b[k]).norm() < 1e-15);
        }
    }
}
