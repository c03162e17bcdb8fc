//! Shared fixtures for the benchmarks.

use ptssh_core::lattice::{build_pt_ssh, GainSign, LatticeConfig};
use ptssh_core::{ComplexMatrix, DriveKind, DriveSpec};

/// The 40-site PT-SSH Hamiltonian at `v/v_T = 0.25`, `gamma/v_T = 0.25`.
pub fn pt_ssh_40() -> ComplexMatrix {
    let cfg = LatticeConfig::new(20, 0.25, 0.25).expect("valid config");
    build_pt_ssh(&cfg, GainSign::Plus)
}

/// The PT-PT drive at `omega/v_T = 0.7` and a 40-site lattice with
/// `gamma/v_T = 0.2`.
pub fn floquet_fixture(v: f64) -> (DriveSpec, LatticeConfig) {
    let drive = DriveSpec::new(DriveKind::PtPt, 0.7).expect("valid drive");
    let cfg = LatticeConfig::new(20, v, 0.2).expect("valid config");
    (drive, cfg)
}
