//! Two-step periodic drive: `H1` on `[0, T/2)`, `H2` on `[T/2, T)`.
//!
//! Real-space spectra go through the numerical monodromy and its Floquet
//! logarithm, since open boundaries break momentum conservation. The
//! closed-form quasienergy and effective Hamiltonian apply to a single
//! rotated Bloch block (or the two-site model, `r = J`) driven between
//! `+gamma` and `-gamma`.

use crate::bloch::{propagator_coefficients, r_of_k, BlochParams};
use crate::error::{Error, Result};
use crate::lattice::{build_pt_ssh, build_ssh, build_two_site, GainSign, LatticeConfig};
use crate::linalg::{eig_dense, expm, floquet_decompose, ComplexMatrix, FloquetDecomposition};
use crate::pauli;
use num_complex::Complex64;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

/// `|x|` within this distance of 1 is treated as an exceptional point.
pub const EXCEPTIONAL_TOL: f64 = 1e-10;

/// Symmetry checks pass when the violation is below this, relative to
/// `max(1, ||H||_F)`.
pub const SYMMETRY_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DriveKind {
    /// `H_PT(gamma)` then its conjugate `H_PT(-gamma)`.
    PtPt,
    /// `H_PT(gamma)` then the Hermitian `H_SSH`.
    PtHermitian,
    /// `J sigma_x + i gamma sigma_z` then `J sigma_x - i gamma sigma_z`.
    TwoSite,
}

impl DriveKind {
    pub fn name(self) -> &'static str {
        match self {
            DriveKind::PtPt => "pt-pt",
            DriveKind::PtHermitian => "pt-hermitian",
            DriveKind::TwoSite => "two-site",
        }
    }
}

impl fmt::Display for DriveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DriveKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pt-pt" => Ok(DriveKind::PtPt),
            "pt-hermitian" => Ok(DriveKind::PtHermitian),
            "two-site" => Ok(DriveKind::TwoSite),
            other => Err(Error::InvalidConfig(format!("unknown drive '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DriveSpec {
    pub kind: DriveKind,
    pub omega: f64,
}

impl DriveSpec {
    pub fn new(kind: DriveKind, omega: f64) -> Result<Self> {
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "omega must be positive, got {omega}"
            )));
        }
        Ok(Self { kind, omega })
    }

    pub fn period(&self) -> f64 {
        2.0 * PI / self.omega
    }

    /// Half period `tau = pi / omega`.
    pub fn tau(&self) -> f64 {
        PI / self.omega
    }

    /// The two step Hamiltonians for a lattice drive.
    pub fn lattice_steps(&self, config: &LatticeConfig) -> Result<(ComplexMatrix, ComplexMatrix)> {
        match self.kind {
            DriveKind::PtPt => Ok((
                build_pt_ssh(config, GainSign::Plus),
                build_pt_ssh(config, GainSign::Minus),
            )),
            DriveKind::PtHermitian => Ok((build_pt_ssh(config, GainSign::Plus), build_ssh(config))),
            DriveKind::TwoSite => Err(Error::InvalidConfig(
                "two-site drive has no lattice form".into(),
            )),
        }
    }

    /// The two step Hamiltonians of the two-site model.
    pub fn two_site_steps(&self, j: f64, gamma: f64) -> (ComplexMatrix, ComplexMatrix) {
        (
            build_two_site(j, gamma, GainSign::Plus),
            build_two_site(j, gamma, GainSign::Minus),
        )
    }
}

/// `exp(-i H2 T/2) exp(-i H1 T/2)`.
pub fn monodromy(h1: &ComplexMatrix, h2: &ComplexMatrix, period: f64) -> Result<ComplexMatrix> {
    Ok(Monodromy::new(h1, h2, period)?.forward)
}

/// One-period propagator together with its exactly propagated inverse.
#[derive(Clone, Debug)]
pub struct Monodromy {
    pub forward: ComplexMatrix,
    /// `exp(+i H1 T/2) exp(+i H2 T/2)`.
    pub backward: ComplexMatrix,
    pub period: f64,
}

impl Monodromy {
    pub fn new(h1: &ComplexMatrix, h2: &ComplexMatrix, period: f64) -> Result<Self> {
        if h1.dim() != h2.dim() {
            return Err(Error::DimensionMismatch {
                left: h1.dim(),
                right: h2.dim(),
            });
        }
        if !(period > 0.0 && period.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "period must be positive, got {period}"
            )));
        }
        let tau = 0.5 * period;
        let minus = Complex64::new(0.0, -tau);
        let plus = Complex64::new(0.0, tau);
        let forward = &expm(&h2.scale(minus))? * &expm(&h1.scale(minus))?;
        let backward = &expm(&h1.scale(plus))? * &expm(&h2.scale(plus))?;
        Ok(Self {
            forward,
            backward,
            period,
        })
    }

    pub fn from_drive(drive: &DriveSpec, config: &LatticeConfig) -> Result<Self> {
        let (h1, h2) = drive.lattice_steps(config)?;
        Self::new(&h1, &h2, drive.period())
    }

    pub fn decompose(&self) -> Result<FloquetDecomposition> {
        floquet_decompose(&self.forward, self.period, Some(&self.backward))
    }

    /// Effective Hamiltonian with quasienergies in `[-omega/2, omega/2)`.
    pub fn hamiltonian(&self) -> Result<ComplexMatrix> {
        self.decompose()?.hamiltonian()
    }
}

/// Representative quasienergy of a driven block and its folding variable.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuasiEnergy {
    /// `Re >= 0`, `Im >= 0`; the partner is `-value`.
    pub value: Complex64,
    /// `x = r sin(E tau) / E`, always real.
    pub x: f64,
}

impl QuasiEnergy {
    pub fn is_broken(&self) -> bool {
        self.x.abs() > 1.0
    }

    pub fn is_exceptional(&self) -> bool {
        (self.x.abs() - 1.0).abs() <= EXCEPTIONAL_TOL
    }

    pub fn eta(&self) -> f64 {
        self.value.im
    }
}

/// Solves `cos(2 E tau) = 1 - 2 x^2` for the `+gamma / -gamma` drive of
/// `r sigma_x + i gamma sigma_z`.
pub fn quasienergy_analytic(r: f64, gamma: f64, omega: f64) -> QuasiEnergy {
    let tau = PI / omega;
    let (_, s) = propagator_coefficients(r, gamma, tau);
    let x = r * s;
    let ax = x.abs();
    let value = if ax <= 1.0 {
        Complex64::new(ax.asin() / tau, 0.0)
    } else {
        Complex64::new(0.5 * omega, ax.acosh() / tau)
    };
    QuasiEnergy { value, x }
}

/// Closed-form Floquet data of a driven block.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FloquetAnalytic {
    pub curly_e: Complex64,
    pub eta: f64,
    pub x: f64,
    /// Prefactor of `H_F = c (cos(E tau) sigma_x - i gamma sin(E tau)/E sigma_y)`.
    pub c: Complex64,
    /// Pauli coefficients `(x, y, z)` of `H_F`.
    pub hf_vector: [Complex64; 3],
    pub omega: f64,
    cos_e_tau: f64,
    gamma_sinc: f64,
}

impl FloquetAnalytic {
    pub fn is_broken(&self) -> bool {
        self.x.abs() > 1.0
    }

    pub fn matrix(&self) -> ComplexMatrix {
        pauli::compose(Complex64::new(0.0, 0.0), self.hf_vector)
    }

    /// `H_F / curly_e`, squaring to the identity; defined at `curly_e = 0`.
    fn direction(&self) -> ComplexMatrix {
        let sign = if self.x < 0.0 { -1.0 } else { 1.0 };
        let d = 1.0 - self.x * self.x;
        let scale = if d > 0.0 {
            Complex64::new(sign / d.sqrt(), 0.0)
        } else {
            Complex64::new(0.0, sign / (-d).sqrt())
        };
        let zero = Complex64::new(0.0, 0.0);
        pauli::compose(
            zero,
            [
                scale * self.cos_e_tau,
                scale * Complex64::new(0.0, -self.gamma_sinc),
                zero,
            ],
        )
    }
}

/// Closed-form effective Hamiltonian of the `+gamma / -gamma` drive.
pub fn hf_analytic(r: f64, gamma: f64, omega: f64) -> Result<FloquetAnalytic> {
    let tau = PI / omega;
    let (cos_e_tau, sinc) = propagator_coefficients(r, gamma, tau);
    let q = quasienergy_analytic(r, gamma, omega);
    let x = q.x;
    if q.is_exceptional() {
        return Err(Error::ResonanceSingularity { x });
    }
    // c = 2 curly_e x / sin(2 curly_e tau), written without the removable
    // singularity at x = 0.
    let ax = x.abs();
    let c = if ax < 1.0 {
        let ratio = if ax < 1e-8 {
            1.0 + ax * ax / 6.0
        } else {
            ax.asin() / ax
        };
        Complex64::new(x * ratio / (tau * (1.0 - x * x).sqrt()), 0.0)
    } else {
        Complex64::new(0.0, x.signum() / (x * x - 1.0).sqrt()) * q.value
    };
    let gamma_sinc = gamma * sinc;
    let hf_vector = [
        c * cos_e_tau,
        c * Complex64::new(0.0, -gamma_sinc),
        Complex64::new(0.0, 0.0),
    ];
    Ok(FloquetAnalytic {
        curly_e: q.value,
        eta: q.value.im,
        x,
        c,
        hf_vector,
        omega,
        cos_e_tau,
        gamma_sinc,
    })
}

/// Effective Hamiltonian shifted by half a Floquet zone.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftedFloquet {
    /// `curly_e - omega/2`.
    pub curly_e_s: Complex64,
    /// `V (curly_e_s sigma_z + omega/2) V^-1`.
    pub matrix: ComplexMatrix,
}

/// Shifted effective Hamiltonian with eigenvalues `omega/2 +- curly_e_s`.
pub fn hf_shifted(r: f64, gamma: f64, omega: f64) -> Result<ShiftedFloquet> {
    let hf = match hf_analytic(r, gamma, omega) {
        Ok(hf) => hf,
        Err(Error::ResonanceSingularity { x }) => {
            return Err(Error::DefectiveMonodromy {
                condition: 1.0 / (x.abs() - 1.0).abs(),
            })
        }
        Err(e) => return Err(e),
    };
    let curly_e_s = hf.curly_e - 0.5 * omega;
    let direction = hf.direction();
    let eig = eig_dense(&direction)?;
    if eig.near_defective {
        return Err(Error::DefectiveMonodromy {
            condition: eig.condition,
        });
    }
    // Each column keeps its own +1/-1 label, so column order is irrelevant.
    let half = Complex64::new(0.5 * omega, 0.0);
    let matrix = eig.reconstruct_with(|n| {
        let label = if n.re >= 0.0 { 1.0 } else { -1.0 };
        curly_e_s * label + half
    })?;
    Ok(ShiftedFloquet { curly_e_s, matrix })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymmetryFlags {
    /// `sigma_z H sigma_z = -H`.
    pub sublattice: bool,
    /// `sigma_x H sigma_x = H^dagger`.
    pub pseudo_hermitian: bool,
    /// `sigma_y H sigma_y = -H^dagger`.
    pub chiral: bool,
}

pub fn classify_symmetries(h: &ComplexMatrix) -> Result<SymmetryFlags> {
    if h.dim() != 2 {
        return Err(Error::DimensionMismatch {
            left: 2,
            right: h.dim(),
        });
    }
    let tol = SYMMETRY_TOL * h.frobenius_norm().max(1.0);
    let (sx, sy, sz) = (pauli::sigma_x(), pauli::sigma_y(), pauli::sigma_z());
    let hd = h.adjoint();
    let neg = Complex64::new(-1.0, 0.0);
    Ok(SymmetryFlags {
        sublattice: (&(&sz * h) * &sz).max_abs_diff(&h.scale(neg)) <= tol,
        pseudo_hermitian: (&(&sx * h) * &sx).max_abs_diff(&hd) <= tol,
        chiral: (&(&sy * h) * &sy).max_abs_diff(&hd.scale(neg)) <= tol,
    })
}

/// Closed-form one-period propagator of the rotated block driven between
/// `+gamma` and `-gamma`.
pub fn monodromy_k_analytic(p: &BlochParams, omega: f64) -> ComplexMatrix {
    monodromy_rotated(r_of_k(p), p.gamma, omega)
}

/// `(1 - 2x^2) I - 2 i x (cos(E tau) sigma_x - i gamma sin(E tau)/E sigma_y)`.
pub fn monodromy_rotated(r: f64, gamma: f64, omega: f64) -> ComplexMatrix {
    let tau = PI / omega;
    let (c, s) = propagator_coefficients(r, gamma, tau);
    let x = r * s;
    let a0 = c * c - s * s * (r * r + gamma * gamma);
    pauli::compose(
        Complex64::new(a0, 0.0),
        [
            Complex64::new(0.0, -2.0 * x * c),
            Complex64::new(-2.0 * x * gamma * s, 0.0),
            Complex64::new(0.0, 0.0),
        ],
    )
}
