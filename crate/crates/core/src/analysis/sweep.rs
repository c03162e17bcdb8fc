use super::phase::PhaseFlag;
use super::spectrum::Spectrum;
use crate::error::{Error, Result};
use crate::floquet::{DriveSpec, Monodromy};
use crate::lattice::{build_pt_ssh, GainSign, LatticeConfig};
use rayon::prelude::*;

/// What is diagonalised at each sweep point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SweepDrive {
    /// `H_PT` with the template's `gamma` (plain SSH when it is zero).
    Static,
    /// Quasienergies of a two-step lattice drive.
    Floquet(DriveSpec),
}

#[derive(Clone, Debug)]
pub struct SweepPoint {
    pub v_over_vt: f64,
    /// `None` when the point failed; `error` then says why.
    pub spectrum: Option<Spectrum>,
    pub status: PhaseFlag,
    pub error: Option<Error>,
}

#[derive(Clone, Debug)]
pub struct SweepResult {
    pub drive: SweepDrive,
    pub points: Vec<SweepPoint>,
}

impl SweepResult {
    pub fn defective_fraction(&self) -> f64 {
        if self.points.is_empty() {
            return 0.0;
        }
        let bad = self
            .points
            .iter()
            .filter(|p| p.status == PhaseFlag::Defective)
            .count();
        bad as f64 / self.points.len() as f64
    }
}

/// Spectrum of one lattice under `drive`.
pub fn point_spectrum(config: &LatticeConfig, drive: SweepDrive) -> Result<Spectrum> {
    match drive {
        SweepDrive::Static => Spectrum::of_hamiltonian(&build_pt_ssh(config, GainSign::Plus)),
        SweepDrive::Floquet(spec) => {
            Spectrum::of_floquet(&Monodromy::from_drive(&spec, config)?.decompose()?)
        }
    }
}

/// Spectra over a strictly increasing grid of `v/v_T` in `[0, 1]`.
/// Per-point failures are recorded, not propagated.
pub fn band_sweep(
    template: &LatticeConfig,
    v_values: &[f64],
    drive: SweepDrive,
) -> Result<SweepResult> {
    if v_values.is_empty() {
        return Err(Error::InvalidConfig("empty v/v_T grid".into()));
    }
    if v_values.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidConfig(
            "v/v_T grid must be strictly increasing".into(),
        ));
    }
    let configs = v_values
        .iter()
        .map(|&v| template.with_v(v))
        .collect::<Result<Vec<_>>>()?;
    let points = configs
        .par_iter()
        .map(|cfg| match point_spectrum(cfg, drive) {
            Ok(s) => SweepPoint {
                v_over_vt: cfg.v,
                status: if s.near_defective {
                    PhaseFlag::Exceptional
                } else {
                    PhaseFlag::Ok
                },
                spectrum: Some(s),
                error: None,
            },
            Err(e) => SweepPoint {
                v_over_vt: cfg.v,
                spectrum: None,
                status: PhaseFlag::Defective,
                error: Some(e),
            },
        })
        .collect();
    Ok(SweepResult { drive, points })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unsorted_grid() {
        let t = LatticeConfig::new(4, 0.5, 0.0).unwrap();
        assert!(band_sweep(&t, &[0.2, 0.1], SweepDrive::Static).is_err());
        assert!(band_sweep(&t, &[0.2, 1.2], SweepDrive::Static).is_err());
    }

    #[test]
    fn static_sweep_sizes() {
        let t = LatticeConfig::new(5, 0.5, 0.0).unwrap();
        let r = band_sweep(&t, &[0.0, 0.5, 1.0], SweepDrive::Static).unwrap();
        assert_eq!(r.points.len(), 3);
        assert!(r
            .points
            .iter()
            .all(|p| p.spectrum.as_ref().unwrap().len() == 10));
        assert_eq!(r.defective_fraction(), 0.0);
    }
}
