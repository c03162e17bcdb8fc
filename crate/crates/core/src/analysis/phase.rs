use crate::error::{Error, Result};
use crate::floquet::{quasienergy_analytic, DriveKind, DriveSpec, Monodromy};
use crate::lattice::LatticeConfig;
use rayon::prelude::*;
use std::fmt;
use std::str::FromStr;

/// Per-cell status of a phase diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PhaseFlag {
    Ok,
    /// Exceptional point or near-defective monodromy.
    Exceptional,
    /// The eigensolver failed; the cell value is 0.
    Defective,
}

impl PhaseFlag {
    pub fn name(self) -> &'static str {
        match self {
            PhaseFlag::Ok => "OK",
            PhaseFlag::Exceptional => "EXCEPTIONAL",
            PhaseFlag::Defective => "DEFECTIVE",
        }
    }
}

impl fmt::Display for PhaseFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Named, uniformly spaced parameter values.
#[derive(Clone, Debug, PartialEq)]
pub struct Axis {
    pub name: String,
    pub values: Vec<f64>,
}

impl Axis {
    /// `count` points from `lo` to `hi` inclusive; `lo + (hi - lo) i / (count - 1)`.
    pub fn linspace(name: &str, lo: f64, hi: f64, count: usize) -> Result<Self> {
        if count == 0 || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "invalid axis {name}: {lo}:{hi}:{count}"
            )));
        }
        if count > 1 && !(lo < hi) {
            return Err(Error::InvalidConfig(format!("axis {name} needs min < max")));
        }
        let values = if count == 1 {
            vec![lo]
        } else {
            let span = hi - lo;
            (0..count)
                .map(|i| lo + span * i as f64 / (count - 1) as f64)
                .collect()
        };
        Ok(Self {
            name: name.to_string(),
            values,
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Which two parameters span the diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PhasePlane {
    /// `x = omega`, `y = gamma`, fixed `v`.
    OmegaGamma,
    /// `x = v`, `y = omega`, fixed `gamma`.
    VOmega,
}

impl PhasePlane {
    pub fn name(self) -> &'static str {
        match self {
            PhasePlane::OmegaGamma => "omega-gamma",
            PhasePlane::VOmega => "v-omega",
        }
    }

    pub fn axis_names(self) -> (&'static str, &'static str) {
        match self {
            PhasePlane::OmegaGamma => ("omega_over_vt", "gamma_over_vt"),
            PhasePlane::VOmega => ("v_over_vt", "omega_over_vt"),
        }
    }
}

impl fmt::Display for PhasePlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PhasePlane {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "omega-gamma" => Ok(PhasePlane::OmegaGamma),
            "v-omega" => Ok(PhasePlane::VOmega),
            other => Err(Error::InvalidConfig(format!("unknown plane '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PhaseDiagramSpec {
    pub kind: DriveKind,
    pub plane: PhasePlane,
    pub x: Axis,
    pub y: Axis,
    pub dimers: usize,
    /// Fixed `v/v_T` on the omega-gamma plane.
    pub v: f64,
    /// Fixed `gamma/v_T` on the v-omega plane.
    pub gamma: f64,
    /// Two-site coupling `J`.
    pub coupling_j: f64,
}

/// `max |Im eps|` over a parameter plane, stored row by row (`y` outer).
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseGrid {
    pub x_axis: Axis,
    pub y_axis: Axis,
    pub values: Vec<f64>,
    pub flags: Vec<PhaseFlag>,
    /// Resonant frequencies `omega = 2 r / n`, `n = 1, 3, 5`.
    pub resonances: Vec<f64>,
}

impl PhaseGrid {
    pub fn value(&self, ix: usize, iy: usize) -> f64 {
        self.values[iy * self.x_axis.len() + ix]
    }

    pub fn flag(&self, ix: usize, iy: usize) -> PhaseFlag {
        self.flags[iy * self.x_axis.len() + ix]
    }

    pub fn defective_fraction(&self) -> f64 {
        let bad = self
            .flags
            .iter()
            .filter(|f| **f == PhaseFlag::Defective)
            .count();
        bad as f64 / self.flags.len().max(1) as f64
    }
}

/// First three resonances `2 scale / n` for `n = 1, 3, 5`.
pub fn resonance_frequencies(scale: f64) -> Vec<f64> {
    [1.0, 3.0, 5.0].iter().map(|n| 2.0 * scale / n).collect()
}

/// Evaluates every cell of the diagram; cells are independent and the
/// result does not depend on evaluation order.
pub fn phase_diagram(spec: &PhaseDiagramSpec) -> Result<PhaseGrid> {
    if spec.x.is_empty() || spec.y.is_empty() {
        return Err(Error::InvalidConfig(
            "phase grid needs at least one point per axis".into(),
        ));
    }
    if spec.kind == DriveKind::TwoSite && spec.plane != PhasePlane::OmegaGamma {
        return Err(Error::InvalidConfig(
            "two-site drive only supports the omega-gamma plane".into(),
        ));
    }
    if spec.dimers == 0 {
        return Err(Error::InvalidConfig("dimer count must be >= 1".into()));
    }
    let nx = spec.x.len();
    let cells: Vec<(f64, PhaseFlag)> = (0..nx * spec.y.len())
        .into_par_iter()
        .map(|idx| {
            let (x, y) = (spec.x.values[idx % nx], spec.y.values[idx / nx]);
            let (omega, v, gamma) = match spec.plane {
                PhasePlane::OmegaGamma => (x, spec.v, y),
                PhasePlane::VOmega => (y, x, spec.gamma),
            };
            evaluate_cell(spec, omega, v, gamma)
        })
        .collect();
    let scale = if spec.kind == DriveKind::TwoSite {
        spec.coupling_j
    } else {
        1.0
    };
    Ok(PhaseGrid {
        x_axis: spec.x.clone(),
        y_axis: spec.y.clone(),
        values: cells.iter().map(|c| c.0).collect(),
        flags: cells.iter().map(|c| c.1).collect(),
        resonances: resonance_frequencies(scale),
    })
}

fn evaluate_cell(spec: &PhaseDiagramSpec, omega: f64, v: f64, gamma: f64) -> (f64, PhaseFlag) {
    let drive = match DriveSpec::new(spec.kind, omega) {
        Ok(d) => d,
        Err(_) => return (0.0, PhaseFlag::Defective),
    };
    let monodromy = if spec.kind == DriveKind::TwoSite {
        if quasienergy_analytic(spec.coupling_j.abs(), gamma, omega).is_exceptional() {
            return (0.0, PhaseFlag::Exceptional);
        }
        let (h1, h2) = drive.two_site_steps(spec.coupling_j, gamma);
        Monodromy::new(&h1, &h2, drive.period())
    } else {
        LatticeConfig::new(spec.dimers, v, gamma)
            .and_then(|cfg| Monodromy::from_drive(&drive, &cfg))
    };
    match monodromy.and_then(|m| m.decompose()) {
        Ok(d) => {
            let flag = if d.near_defective {
                PhaseFlag::Exceptional
            } else {
                PhaseFlag::Ok
            };
            (d.max_imag(), flag)
        }
        Err(_) => (0.0, PhaseFlag::Defective),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_endpoints_exact() {
        let a = Axis::linspace("v", 0.0, 1.0, 11).unwrap();
        assert_eq!(a.values[0], 0.0);
        assert_eq!(a.values[2], 0.2);
        assert_eq!(a.values[10], 1.0);
        assert!(Axis::linspace("v", 1.0, 0.0, 3).is_err());
        assert_eq!(Axis::linspace("g", 0.3, 0.3, 1).unwrap().values, vec![0.3]);
    }

    #[test]
    fn two_site_hermitian_row_is_real() {
        let spec = PhaseDiagramSpec {
            kind: DriveKind::TwoSite,
            plane: PhasePlane::OmegaGamma,
            x: Axis::linspace("omega", 0.3, 4.0, 21).unwrap(),
            y: Axis::linspace("gamma", 0.0, 0.0, 1).unwrap(),
            dimers: 1,
            v: 0.5,
            gamma: 0.0,
            coupling_j: 1.0,
        };
        let g = phase_diagram(&spec).unwrap();
        assert!(g.values.iter().all(|&v| v < 1e-12));
        assert_eq!(g.resonances, vec![2.0, 2.0 / 3.0, 0.4]);
    }

    #[test]
    fn two_site_resonance_is_broken() {
        let spec = PhaseDiagramSpec {
            kind: DriveKind::TwoSite,
            plane: PhasePlane::OmegaGamma,
            x: Axis::linspace("omega", 2.0, 2.0, 1).unwrap(),
            y: Axis::linspace("gamma", 0.05, 0.05, 1).unwrap(),
            dimers: 1,
            v: 0.5,
            gamma: 0.0,
            coupling_j: 1.0,
        };
        let g = phase_diagram(&spec).unwrap();
        assert!(g.values[0] > 1e-3);
        assert_eq!(g.flags[0], PhaseFlag::Ok);
    }

    #[test]
    fn two_site_rejects_v_omega() {
        let spec = PhaseDiagramSpec {
            kind: DriveKind::TwoSite,
            plane: PhasePlane::VOmega,
            x: Axis::linspace("v", 0.1, 0.9, 3).unwrap(),
            y: Axis::linspace("omega", 1.0, 2.0, 3).unwrap(),
            dimers: 1,
            v: 0.5,
            gamma: 0.1,
            coupling_j: 1.0,
        };
        assert!(phase_diagram(&spec).is_err());
    }
}
