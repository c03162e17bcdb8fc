//! Real-space Hamiltonians of the SSH chain and its PT-symmetric extension.
//!
//! Sites are ordered `A, B, A, B, ...` by ascending cell; cell `m` (1-based)
//! sublattice `A` sits at flat index `2(m-1)` and `B` at `2(m-1) + 1`.

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use num_complex::Complex64;
use std::fmt;

/// Dimer count used by the command-line tools unless overridden.
pub const DEFAULT_DIMERS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sublattice {
    A,
    B,
}

impl fmt::Display for Sublattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sublattice::A => "A",
            Sublattice::B => "B",
        })
    }
}

/// Cell and sublattice label of a site.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SiteIndex {
    /// 1-based cell index.
    pub cell: usize,
    pub sublattice: Sublattice,
}

impl SiteIndex {
    pub fn flat(self) -> usize {
        2 * (self.cell - 1)
            + match self.sublattice {
                Sublattice::A => 0,
                Sublattice::B => 1,
            }
    }

    pub fn from_flat(index: usize) -> Self {
        let sublattice = if index.is_multiple_of(2) {
            Sublattice::A
        } else {
            Sublattice::B
        };
        Self {
            cell: index / 2 + 1,
            sublattice,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Boundary {
    #[default]
    Open,
    /// Closes the chain with a `w` bond between the last B and first A site.
    Periodic,
}

/// Sign of the gain/loss term: `Plus` puts `+i gamma` on A sites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GainSign {
    Plus,
    Minus,
}

impl GainSign {
    pub fn value(self) -> f64 {
        match self {
            GainSign::Plus => 1.0,
            GainSign::Minus => -1.0,
        }
    }
}

/// A single static lattice in units of `v_T = v + w = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LatticeConfig {
    pub dimers: usize,
    pub v: f64,
    pub w: f64,
    pub gamma: f64,
    pub boundary: Boundary,
}

impl LatticeConfig {
    /// Open chain with `w = 1 - v`.
    pub fn new(dimers: usize, v: f64, gamma: f64) -> Result<Self> {
        if dimers == 0 {
            return Err(Error::InvalidConfig("dimer count must be >= 1".into()));
        }
        if !(v.is_finite() && (0.0..=1.0).contains(&v)) {
            return Err(Error::InvalidConfig(format!(
                "v/v_T must lie in [0, 1], got {v}"
            )));
        }
        if !gamma.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "gamma/v_T must be finite, got {gamma}"
            )));
        }
        Ok(Self {
            dimers,
            v,
            w: 1.0 - v,
            gamma,
            boundary: Boundary::Open,
        })
    }

    pub fn periodic(self) -> Self {
        Self {
            boundary: Boundary::Periodic,
            ..self
        }
    }

    pub fn with_v(self, v: f64) -> Result<Self> {
        Ok(Self {
            boundary: self.boundary,
            ..Self::new(self.dimers, v, self.gamma)?
        })
    }

    pub fn with_gamma(self, gamma: f64) -> Result<Self> {
        Ok(Self {
            boundary: self.boundary,
            ..Self::new(self.dimers, self.v, gamma)?
        })
    }

    pub fn sites(&self) -> usize {
        2 * self.dimers
    }
}

/// Hermitian SSH Hamiltonian.
pub fn build_ssh(config: &LatticeConfig) -> ComplexMatrix {
    let n = config.sites();
    let mut h = ComplexMatrix::zeros(n);
    for m in 0..config.dimers {
        let a = 2 * m;
        h[(a, a + 1)] += Complex64::new(config.v, 0.0);
        h[(a + 1, a)] += Complex64::new(config.v, 0.0);
        if m + 1 < config.dimers {
            h[(a + 1, a + 2)] += Complex64::new(config.w, 0.0);
            h[(a + 2, a + 1)] += Complex64::new(config.w, 0.0);
        }
    }
    if config.boundary == Boundary::Periodic {
        h[(n - 1, 0)] += Complex64::new(config.w, 0.0);
        h[(0, n - 1)] += Complex64::new(config.w, 0.0);
    }
    h
}

/// SSH Hamiltonian plus `sign * i gamma` on A sites and `-sign * i gamma`
/// on B sites. `GainSign::Minus` gives the complex conjugate.
pub fn build_pt_ssh(config: &LatticeConfig, sign: GainSign) -> ComplexMatrix {
    let mut h = build_ssh(config);
    let g = sign.value() * config.gamma;
    for i in 0..config.sites() {
        let s = if i % 2 == 0 { g } else { -g };
        h[(i, i)] = Complex64::new(0.0, s);
    }
    h
}

/// `J sigma_x + sign * i gamma sigma_z`.
pub fn build_two_site(j: f64, gamma: f64, sign: GainSign) -> ComplexMatrix {
    let g = Complex64::new(0.0, sign.value() * gamma);
    let jj = Complex64::new(j, 0.0);
    ComplexMatrix::from_rows_unchecked(2, &[g, jj, jj, -g])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eigenvalues;

    #[test]
    fn site_index_bijection() {
        for i in 0..40 {
            assert_eq!(SiteIndex::from_flat(i).flat(), i);
        }
        let s = SiteIndex {
            cell: 20,
            sublattice: Sublattice::B,
        };
        assert_eq!(s.flat(), 39);
    }

    #[test]
    fn single_dimer() {
        let h = build_ssh(&LatticeConfig::new(1, 1.0, 0.0).unwrap());
        let e = eigenvalues(&h).unwrap();
        assert!((e[0].re + 1.0).abs() < 1e-14 && (e[1].re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn pt_sign_conjugates() {
        let c = LatticeConfig::new(5, 0.3, 0.4).unwrap();
        let p = build_pt_ssh(&c, GainSign::Plus);
        let m = build_pt_ssh(&c, GainSign::Minus);
        assert_eq!(p.conjugate(), m);
        assert!(p.trace().norm() < 1e-15);
        let hermitian = build_pt_ssh(&LatticeConfig::new(5, 0.3, 0.0).unwrap(), GainSign::Plus);
        assert_eq!(hermitian, build_ssh(&c));
    }

    #[test]
    fn periodic_bond() {
        let h = build_ssh(&LatticeConfig::new(3, 0.25, 0.0).unwrap().periodic());
        assert_eq!(h[(5, 0)], Complex64::new(0.75, 0.0));
        assert_eq!(h[(0, 5)], Complex64::new(0.75, 0.0));
    }

    #[test]
    fn rejects_bad_config() {
        assert!(LatticeConfig::new(0, 0.5, 0.0).is_err());
        assert!(LatticeConfig::new(3, 1.5, 0.0).is_err());
        assert!(LatticeConfig::new(3, 0.5, f64::NAN).is_err());
    }

    #[test]
    fn two_site_spectrum() {
        let e = eigenvalues(&build_two_site(1.0, 0.5, GainSign::Plus)).unwrap();
        assert!((e[1].re - 0.75f64.sqrt()).abs() < 1e-14 && e[1].im.abs() < 1e-14);
        let e = eigenvalues(&build_two_site(1.0, 1.5, GainSign::Plus)).unwrap();
        let want = 1.25f64.sqrt();
        assert!(e
            .iter()
            .all(|z| z.re.abs() < 1e-14 && (z.im.abs() - want).abs() < 1e-14));
    }
}
