//! Momentum-space blocks of the periodic PT-SSH chain.
//!
//! Each block `H(k) = (v + w cos k) sigma_x + w sin k sigma_y + i gamma sigma_z`
//! is rotated about `z` by `phi(k)` into `r sigma_x + i gamma sigma_z`, whose
//! propagator has real scalar coefficients for every `gamma`.

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::pauli;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Default number of crystal momenta in band sweeps.
pub const DEFAULT_K_POINTS: usize = 201;

/// `r(k)` at or below this is treated as zero.
pub const DEGENERATE_R: f64 = 1e-12;

/// Below this `|E t|` the coefficients are evaluated by their Taylor series.
const SERIES_CUTOFF: f64 = 1e-4;

/// Wraps `k` into `[-pi, pi)`.
pub fn wrap_k(k: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut q = k - two_pi * ((k + PI) / two_pi).floor();
    if q >= PI {
        q -= two_pi;
    }
    if q < -PI {
        q += two_pi;
    }
    q
}

/// `n` uniformly spaced momenta `-pi + 2 pi j / n`.
pub fn k_grid(n: usize) -> Vec<f64> {
    (0..n)
        .map(|j| -PI + 2.0 * PI * j as f64 / n as f64)
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochParams {
    pub v: f64,
    pub w: f64,
    pub gamma: f64,
    /// Always in `[-pi, pi)`.
    pub k: f64,
}

impl BlochParams {
    pub fn new(v: f64, w: f64, gamma: f64, k: f64) -> Self {
        Self {
            v,
            w,
            gamma,
            k: wrap_k(k),
        }
    }

    pub fn with_gamma(self, gamma: f64) -> Self {
        Self { gamma, ..self }
    }
}

/// Rotated-frame data of one block.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochBlock {
    pub r: f64,
    pub phi: f64,
    /// Principal root of `r^2 - gamma^2`: real and non-negative, or
    /// positive imaginary.
    pub energy: Complex64,
    /// Set when `r` vanishes and `phi` was fixed to zero by convention.
    pub degenerate: bool,
}

impl BlochBlock {
    pub fn new(p: &BlochParams) -> Self {
        let (dx, dy) = direction(p);
        let r = r_of_k(p);
        let degenerate = r <= DEGENERATE_R;
        let phi = if degenerate { 0.0 } else { dy.atan2(dx) };
        Self {
            r,
            phi,
            energy: block_energy(r, p.gamma),
            degenerate,
        }
    }
}

fn direction(p: &BlochParams) -> (f64, f64) {
    (p.v + p.w * p.k.cos(), p.w * p.k.sin())
}

/// `H_PT(k)`.
pub fn h_pt_k(p: &BlochParams) -> ComplexMatrix {
    let (dx, dy) = direction(p);
    pauli::compose(
        Complex64::new(0.0, 0.0),
        [
            Complex64::new(dx, 0.0),
            Complex64::new(dy, 0.0),
            Complex64::new(0.0, p.gamma),
        ],
    )
}

/// `r(k) = sqrt(v^2 + w^2 + 2 v w cos k)`.
pub fn r_of_k(p: &BlochParams) -> f64 {
    let (dx, dy) = direction(p);
    dx.hypot(dy)
}

/// `sqrt(r^2 - gamma^2)` on the principal branch.
pub fn block_energy(r: f64, gamma: f64) -> Complex64 {
    let e2 = r * r - gamma * gamma;
    if e2 >= 0.0 {
        Complex64::new(e2.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-e2).sqrt())
    }
}

/// `r sigma_x + i gamma sigma_z`.
pub fn rotated_matrix(r: f64, gamma: f64) -> ComplexMatrix {
    let zero = Complex64::new(0.0, 0.0);
    pauli::compose(
        zero,
        [Complex64::new(r, 0.0), zero, Complex64::new(0.0, gamma)],
    )
}

/// Rotation into the frame where the block is `r sigma_x + i gamma sigma_z`.
///
/// Fails with [`Error::DegenerateDirection`] when `r = 0`; use
/// [`BlochBlock::new`] for the `phi = 0` convention instead.
pub fn rotate_block(p: &BlochParams) -> Result<(BlochBlock, ComplexMatrix)> {
    let block = BlochBlock::new(p);
    if block.degenerate {
        return Err(Error::DegenerateDirection);
    }
    Ok((block, rotated_matrix(block.r, p.gamma)))
}

/// `exp(i sigma_z phi / 2)`.
pub fn frame_rotation(phi: f64) -> ComplexMatrix {
    let half = Complex64::new(0.0, 0.5 * phi).exp();
    let zero = Complex64::new(0.0, 0.0);
    ComplexMatrix::from_rows_unchecked(2, &[half, zero, zero, half.conj()])
}

/// `(cos(E t), sin(E t) / E)` for `E^2 = r^2 - gamma^2`; both are real.
pub fn propagator_coefficients(r: f64, gamma: f64, t: f64) -> (f64, f64) {
    let e2 = r * r - gamma * gamma;
    let z = e2 * t * t;
    if z.abs() < SERIES_CUTOFF * SERIES_CUTOFF {
        let cos = 1.0 - z / 2.0 + z * z / 24.0;
        let sinc = t * (1.0 - z / 6.0 + z * z / 120.0);
        return (cos, sinc);
    }
    if e2 > 0.0 {
        let e = e2.sqrt();
        ((e * t).cos(), (e * t).sin() / e)
    } else {
        let kappa = (-e2).sqrt();
        ((kappa * t).cosh(), (kappa * t).sinh() / kappa)
    }
}

/// `cos(E t) I - i (sin(E t)/E) (r sigma_x + i gamma sigma_z)`, the
/// propagator of the rotated block.
pub fn propagator_k(p: &BlochParams, t: f64) -> ComplexMatrix {
    propagator_rotated(r_of_k(p), p.gamma, t)
}

pub(crate) fn propagator_rotated(r: f64, gamma: f64, t: f64) -> ComplexMatrix {
    let (c, s) = propagator_coefficients(r, gamma, t);
    let zero = Complex64::new(0.0, 0.0);
    // -i s (r sigma_x + i gamma sigma_z) = -i s r sigma_x + s gamma sigma_z
    pauli::compose(
        Complex64::new(c, 0.0),
        [
            Complex64::new(0.0, -s * r),
            zero,
            Complex64::new(s * gamma, 0.0),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::expm;

    #[test]
    fn k_wrapping() {
        assert_eq!(wrap_k(PI), -PI);
        assert!((wrap_k(3.0 * PI + 0.1) - (-PI + 0.1)).abs() < 1e-12);
        assert_eq!(wrap_k(0.5), 0.5);
        let g = k_grid(4);
        assert_eq!(g[0], -PI);
        assert!((g[2]).abs() < 1e-15);
    }

    #[test]
    fn block_at_zone_center_and_edge() {
        let p = BlochParams::new(0.25, 0.75, 0.2, 0.0);
        let want = pauli::sigma_x().scale(Complex64::new(1.0, 0.0))
            + pauli::sigma_z().scale(Complex64::new(0.0, 0.2));
        assert!(h_pt_k(&p).max_abs_diff(&want) < 1e-15);
        let p = BlochParams::new(0.25, 0.75, 0.2, -PI);
        let want = pauli::sigma_x().scale(Complex64::new(-0.5, 0.0))
            + pauli::sigma_z().scale(Complex64::new(0.0, 0.2));
        assert!(h_pt_k(&p).max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn r_values() {
        assert!((r_of_k(&BlochParams::new(0.25, 0.75, 0.0, 0.0)) - 1.0).abs() < 1e-15);
        assert!((r_of_k(&BlochParams::new(0.25, 0.75, 0.0, PI)) - 0.5).abs() < 1e-15);
        assert!((r_of_k(&BlochParams::new(0.5, 0.5, 0.0, PI / 2.0)) - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn degenerate_direction() {
        let p = BlochParams::new(0.5, 0.5, 0.1, PI);
        assert_eq!(rotate_block(&p).unwrap_err(), Error::DegenerateDirection);
        let b = BlochBlock::new(&p);
        assert!(b.degenerate && b.phi == 0.0);
    }

    #[test]
    fn principal_root() {
        assert_eq!(block_energy(1.0, 0.6), Complex64::new(0.8, 0.0));
        let e = block_energy(0.5, 1.5);
        assert!(e.re == 0.0 && (e.im - 2.0f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn propagator_identity_and_half_turn() {
        let p = BlochParams::new(0.25, 0.75, 0.3, 1.0);
        assert!(propagator_k(&p, 0.0).max_abs_diff(&ComplexMatrix::identity(2)) < 1e-16);
        let g = propagator_rotated(1.0, 0.0, PI);
        assert!(
            g.max_abs_diff(&ComplexMatrix::identity(2).scale(Complex64::new(-1.0, 0.0))) < 1e-15
        );
    }

    #[test]
    fn broken_block_matches_expm() {
        let h = rotated_matrix(0.5, 1.5);
        let want = expm(&h.scale(Complex64::new(0.0, -1.0))).unwrap();
        let got = propagator_rotated(0.5, 1.5, 1.0);
        assert!(got.max_abs_diff(&want) < 1e-12);
        let (c, _) = propagator_coefficients(0.5, 1.5, 1.0);
        assert!((c - 2.0f64.sqrt().cosh()).abs() < 1e-14);
    }

    #[test]
    fn exceptional_point_series() {
        let (c, s) = propagator_coefficients(0.3, 0.3, 2.0);
        assert_eq!((c, s), (1.0, 2.0));
        let (c, s) = propagator_coefficients(0.3, 0.3 + 1e-9, 2.0);
        assert!((c - 1.0).abs() < 1e-8 && (s - 2.0).abs() < 1e-8);
    }
}
