//! Floquet logarithm `H_F = (i/T) log G` on the principal branch, with
//! quasienergies folded into the first Brillouin zone `[-omega/2, omega/2)`.

use super::eigen::{cmp_complex, eig_dense, DEFECTIVE_CONDITION};
use super::ComplexMatrix;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Eigenpairs with multipliers below this modulus are re-estimated from the
/// inverse monodromy when one is supplied.
const SMALL_MULTIPLIER: f64 = 0.5;

/// Eigen-structure of a one-period propagator.
#[derive(Clone, Debug)]
pub struct FloquetDecomposition {
    /// Folded quasienergies, sorted by (Re, Im).
    pub quasienergies: Vec<Complex64>,
    /// Floquet multipliers `mu_j = exp(-i eps_j T)`, same order.
    pub multipliers: Vec<Complex64>,
    /// Unit-norm right eigenvectors as columns, same order.
    pub vectors: ComplexMatrix,
    /// 1-norm condition number of `vectors`.
    pub condition: f64,
    pub near_defective: bool,
    pub period: f64,
}

impl FloquetDecomposition {
    pub fn omega(&self) -> f64 {
        2.0 * PI / self.period
    }

    pub fn dim(&self) -> usize {
        self.quasienergies.len()
    }

    /// `V diag(eps) V^-1`; fails with [`Error::DefectiveMonodromy`] when the
    /// eigenvector matrix is numerically singular.
    pub fn hamiltonian(&self) -> Result<ComplexMatrix> {
        if self.near_defective {
            return Err(Error::DefectiveMonodromy {
                condition: self.condition,
            });
        }
        let vinv = self
            .vectors
            .inverse()
            .map_err(|_| Error::DefectiveMonodromy {
                condition: self.condition,
            })?;
        let mut scaled = self.vectors.clone();
        for (j, &eps) in self.quasienergies.iter().enumerate() {
            for i in 0..self.dim() {
                scaled[(i, j)] *= eps;
            }
        }
        Ok(&scaled * &vinv)
    }

    /// Largest `|Im eps|`.
    pub fn max_imag(&self) -> f64 {
        self.quasienergies
            .iter()
            .map(|e| e.im.abs())
            .fold(0.0, f64::max)
    }
}

/// Folds a real quasienergy into `[-omega/2, omega/2)`.
pub fn fold_quasienergy(re: f64, omega: f64) -> f64 {
    let half = 0.5 * omega;
    let mut f = re - omega * ((re + half) / omega).floor();
    if f >= half {
        f -= omega;
    }
    if f < -half {
        f += omega;
    }
    f
}

/// `(i/T) ln mu` on the principal branch, real part folded.
pub fn quasienergy_from_multiplier(mu: Complex64, period: f64) -> Result<Complex64> {
    if mu.norm() == 0.0 || !mu.re.is_finite() || !mu.im.is_finite() {
        return Err(Error::SingularMatrix);
    }
    let ln = mu.ln();
    let omega = 2.0 * PI / period;
    Ok(Complex64::new(
        fold_quasienergy(-ln.im / period, omega),
        ln.re / period,
    ))
}

/// Eigendecomposition of `g` expressed as quasienergies.
///
/// When `inverse` (the exactly propagated `g^-1`) is given, multipliers
/// with `|mu| < 0.5` are replaced by the reciprocal of the Rayleigh quotient
/// of `g^-1`. A strongly non-normal `g` loses the absolute accuracy of
/// its small eigenvalues, while in `g^-1` they are the dominant ones.
pub fn floquet_decompose(
    g: &ComplexMatrix,
    period: f64,
    inverse: Option<&ComplexMatrix>,
) -> Result<FloquetDecomposition> {
    if !(period > 0.0 && period.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "period must be positive, got {period}"
        )));
    }
    if let Some(inv) = inverse {
        if inv.dim() != g.dim() {
            return Err(Error::DimensionMismatch {
                left: g.dim(),
                right: inv.dim(),
            });
        }
    }
    let eig = eig_dense(g)?;
    let n = eig.dim();
    let mut pairs = Vec::with_capacity(n);
    for j in 0..n {
        let v = eig.eigenvector(j);
        let mut mu = eig.eigenvalues[j];
        if let Some(inv) = inverse {
            if mu.norm() < SMALL_MULTIPLIER {
                let gv = inv.mul_vec(&v);
                let num: Complex64 = v.iter().zip(&gv).map(|(a, b)| a.conj() * b).sum();
                let den: f64 = v.iter().map(|a| a.norm_sqr()).sum();
                let nu = num / den;
                if nu.norm() > 0.0 && nu.re.is_finite() && nu.im.is_finite() {
                    mu = nu.inv();
                }
            }
        }
        let eps = quasienergy_from_multiplier(mu, period)?;
        pairs.push((eps, mu, v));
    }
    pairs.sort_by(|a, b| cmp_complex(a.0, b.0));

    let vectors = ComplexMatrix::from_fn(n, |i, j| pairs[j].2[i])?;
    let condition = vectors.condition_one();
    Ok(FloquetDecomposition {
        quasienergies: pairs.iter().map(|p| p.0).collect(),
        multipliers: pairs.iter().map(|p| p.1).collect(),
        vectors,
        condition,
        near_defective: !(condition <= DEFECTIVE_CONDITION),
        period,
    })
}

/// Effective Hamiltonian `H_F` with `exp(-i H_F T) = G`.
pub fn floquet_log(g: &ComplexMatrix, period: f64) -> Result<ComplexMatrix> {
    floquet_decompose(g, period, None)?.hamiltonian()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::expm;
    use crate::pauli;

    #[test]
    fn fold_range() {
        let omega = 0.7;
        for &x in &[-5.0, -0.35, 0.0, 0.3499, 0.35, 1.2, 17.0] {
            let f = fold_quasienergy(x, omega);
            assert!((-0.35..0.35).contains(&f), "{x} -> {f}");
            let k = ((x - f) / omega).round();
            assert!((x - f - k * omega).abs() < 1e-12);
        }
        assert_eq!(fold_quasienergy(0.35, 0.7), -0.35);
    }

    #[test]
    fn identity_gives_zero() {
        let h = floquet_log(&ComplexMatrix::identity(3), 1.0).unwrap();
        assert!(h.max_abs_diff(&ComplexMatrix::zeros(3)) < 1e-15);
    }

    #[test]
    fn static_hermitian_round_trip() {
        let g = expm(&pauli::sigma_x().scale(Complex64::new(0.0, -1.0))).unwrap();
        let h = floquet_log(&g, 1.0).unwrap();
        assert!(h.max_abs_diff(&pauli::sigma_x()) < 1e-12);
    }

    #[test]
    fn zero_multiplier_is_singular() {
        let g = ComplexMatrix::from_diagonal(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)])
            .unwrap();
        assert_eq!(floquet_log(&g, 1.0).unwrap_err(), Error::SingularMatrix);
    }

    #[test]
    fn jordan_monodromy_is_defective() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let g = ComplexMatrix::from_rows(2, &[one, one, zero, one]).unwrap();
        assert!(matches!(
            floquet_log(&g, 1.0),
            Err(Error::DefectiveMonodromy { .. })
        ));
    }
}
