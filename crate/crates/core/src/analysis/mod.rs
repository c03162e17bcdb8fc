//! Spectral post-processing: localization measures, PT-phase measures,
//! band sweeps over `v/v_T`, phase diagrams and edge-state selection.

mod phase;
mod spectrum;
mod sweep;

pub use phase::{
    phase_diagram, resonance_frequencies, Axis, PhaseDiagramSpec, PhaseFlag, PhaseGrid, PhasePlane,
};
pub use spectrum::{
    edge_states, ipr, localization, most_localized, pt_broken_measure, EdgeState, Spectrum,
    SpectrumEntry, DEFAULT_ENERGY_TOL, DEFAULT_IPR_MIN, EDGE_FRACTION, NORM_TOL,
};
pub use sweep::{band_sweep, point_spectrum, SweepDrive, SweepPoint, SweepResult};

/// `max |Im eps|` above this counts as PT-broken.
pub const BROKEN_THRESHOLD: f64 = 1e-8;

pub fn is_broken(max_imag: f64) -> bool {
    max_imag > BROKEN_THRESHOLD
}
