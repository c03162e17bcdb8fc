//! Static and Floquet-driven PT-symmetric Su-Schrieffer-Heeger lattices.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`] dense complex linear algebra: non-Hermitian eigensolver,
//!   matrix exponential and the branch-controlled Floquet logarithm.
//! * [`lattice`] real-space Hamiltonians of the open (or periodic) chain.
//! * [`bloch`] the momentum-space 2x2 blocks and their closed-form propagator.
//! * [`floquet`] the two-step drive: monodromy, numeric and closed-form
//!   effective Hamiltonians, and the symmetry classification of the latter.
//! * [`analysis`] inverse participation ratios, PT-phase measures, band
//!   sweeps, phase diagrams and edge-state extraction.
//!
//! All energies are in units of the total coupling `v_T = v + w`.

pub mod analysis;
pub mod bloch;
pub mod error;
pub mod floquet;
pub mod lattice;
pub mod linalg;
pub mod pauli;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, EigenDecomposition, FloquetDecomposition};
pub use num_complex::Complex64;

pub use analysis::{
    Axis, EdgeState, PhaseDiagramSpec, PhaseFlag, PhaseGrid, PhasePlane, Spectrum, SpectrumEntry,
    SweepDrive, SweepPoint, SweepResult,
};
pub use bloch::{BlochBlock, BlochParams};
pub use floquet::{
    DriveKind, DriveSpec, FloquetAnalytic, Monodromy, QuasiEnergy, ShiftedFloquet, SymmetryFlags,
};
pub use lattice::{Boundary, GainSign, LatticeConfig, SiteIndex, Sublattice};
