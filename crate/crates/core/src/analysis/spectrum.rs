use crate::error::{Error, Result};
use crate::linalg::{eig_dense, fold_quasienergy, ComplexMatrix, FloquetDecomposition};
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Allowed deviation of a state's 2-norm from 1.
pub const NORM_TOL: f64 = 1e-8;

/// Default energy window for edge-state detection, units of `v_T`.
pub const DEFAULT_ENERGY_TOL: f64 = 1e-3;

/// Default minimum IPR for edge-state detection.
pub const DEFAULT_IPR_MIN: f64 = 0.2;

/// Fraction of sites at each end counted as "edge" for weights.
pub const EDGE_FRACTION: f64 = 0.1;

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumEntry {
    pub energy: Complex64,
    /// Unit 2-norm.
    pub state: Vec<Complex64>,
    pub ipr: f64,
}

/// Energies with right eigenvectors and their IPRs.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub entries: Vec<SpectrumEntry>,
    /// Drive frequency when the energies are folded quasienergies.
    pub omega: Option<f64>,
    /// The underlying eigenvector matrix was flagged near-defective.
    pub near_defective: bool,
}

/// `sum |psi|^4` of a unit-norm state.
pub fn ipr(state: &[Complex64]) -> Result<f64> {
    let norm = state.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if !((norm - 1.0).abs() <= NORM_TOL) {
        return Err(Error::NotNormalized { norm });
    }
    Ok(state.iter().map(|z| z.norm_sqr() * z.norm_sqr()).sum())
}

/// `max |Im E|` over the spectrum; 0 for an empty spectrum.
pub fn pt_broken_measure(spectrum: &Spectrum) -> f64 {
    spectrum
        .entries
        .iter()
        .map(|e| e.energy.im.abs())
        .fold(0.0, f64::max)
}

/// Weight `sum |psi|^2` on the first and last `ceil(10%)` of sites.
pub fn localization(state: &[Complex64]) -> (f64, f64) {
    let n = state.len();
    let edge = ((n as f64 * EDGE_FRACTION).ceil() as usize).clamp(1, n);
    let left = state[..edge].iter().map(|z| z.norm_sqr()).sum();
    let right = state[n - edge..].iter().map(|z| z.norm_sqr()).sum();
    (left, right)
}

impl Spectrum {
    /// Eigen-spectrum of a static Hamiltonian.
    pub fn of_hamiltonian(h: &ComplexMatrix) -> Result<Self> {
        let eig = eig_dense(h)?;
        let pairs = eig
            .eigenvalues
            .iter()
            .enumerate()
            .map(|(j, &e)| (e, eig.eigenvector(j)))
            .collect();
        Self::assemble(pairs, None, eig.near_defective)
    }

    /// Quasienergy spectrum of a monodromy decomposition.
    pub fn of_floquet(decomposition: &FloquetDecomposition) -> Result<Self> {
        let pairs = decomposition
            .quasienergies
            .iter()
            .enumerate()
            .map(|(j, &e)| (e, decomposition.vectors.column(j)))
            .collect();
        Self::assemble(
            pairs,
            Some(decomposition.omega()),
            decomposition.near_defective,
        )
    }

    fn assemble(
        mut pairs: Vec<(Complex64, Vec<Complex64>)>,
        omega: Option<f64>,
        near_defective: bool,
    ) -> Result<Self> {
        localize_zero_modes(&mut pairs, omega, DEFAULT_ENERGY_TOL);
        let entries = pairs
            .into_iter()
            .map(|(energy, state)| {
                Ok(SpectrumEntry {
                    ipr: ipr(&state)?,
                    energy,
                    state,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            entries,
            omega,
            near_defective,
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn energies(&self) -> Vec<Complex64> {
        self.entries.iter().map(|e| e.energy).collect()
    }

    pub fn max_ipr(&self) -> f64 {
        self.entries.iter().map(|e| e.ipr).fold(0.0, f64::max)
    }

    /// Real part folded into the Floquet zone, or unchanged for static spectra.
    fn zone_re(&self, e: Complex64) -> f64 {
        zone_re(e, self.omega)
    }
}

fn zone_re(e: Complex64, omega: Option<f64>) -> f64 {
    match omega {
        Some(w) => fold_quasienergy(e.re, w),
        None => e.re,
    }
}

/// Rotates clusters of (near-)degenerate states at zero real energy into the
/// basis diagonalising the site-position operator.
///
/// The two edge modes of a finite chain split by an exponentially small
/// amount, and any combination of them is an eigenvector to working
/// precision; the solver returns an arbitrary mixture. Within a cluster
/// the states are orthonormalised and re-expressed as position eigenstates,
/// which separates left and right edges. Energies are reassigned in sorted
/// order.
fn localize_zero_modes(pairs: &mut [(Complex64, Vec<Complex64>)], omega: Option<f64>, window: f64) {
    let candidates: Vec<usize> = (0..pairs.len())
        .filter(|&j| zone_re(pairs[j].0, omega).abs() <= window)
        .collect();
    let mut visited = vec![false; candidates.len()];
    for start in 0..candidates.len() {
        if visited[start] {
            continue;
        }
        visited[start] = true;
        let mut cluster = vec![start];
        let mut head = 0;
        while head < cluster.len() {
            let a = pairs[candidates[cluster[head]]].0;
            for (other, seen) in visited.iter_mut().enumerate() {
                if !*seen && zone_distance(a, pairs[candidates[other]].0, omega) <= window {
                    *seen = true;
                    cluster.push(other);
                }
            }
            head += 1;
        }
        if cluster.len() < 2 {
            continue;
        }
        let mut members: Vec<usize> = cluster.iter().map(|&c| candidates[c]).collect();
        members.sort_unstable();
        rotate_to_position_basis(pairs, &members);
    }
}

fn zone_distance(a: Complex64, b: Complex64, omega: Option<f64>) -> f64 {
    let d = a - b;
    Complex64::new(zone_re(d, omega), d.im).norm()
}

fn rotate_to_position_basis(pairs: &mut [(Complex64, Vec<Complex64>)], members: &[usize]) {
    let n = pairs[members[0]].1.len();
    let k = members.len();
    if k > n {
        return;
    }
    let block = DMatrix::from_fn(n, k, |i, j| pairs[members[j]].1[i]);
    let q = block.qr().q();
    let position = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex64::new(i as f64, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let projected = q.adjoint() * position * &q;
    let eig = projected.symmetric_eigen();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let localized = &q * &eig.eigenvectors;

    let mut energies: Vec<Complex64> = members.iter().map(|&m| pairs[m].0).collect();
    energies.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    for (slot, (&m, &col)) in members.iter().zip(&order).enumerate() {
        let mut v: Vec<Complex64> = localized.column(col).iter().copied().collect();
        // Fix the global phase: largest component real and positive.
        let pivot = v
            .iter()
            .copied()
            .max_by(|a, b| a.norm_sqr().total_cmp(&b.norm_sqr()))
            .unwrap_or(Complex64::new(1.0, 0.0));
        if pivot.norm() > 0.0 {
            let phase = pivot.conj() / pivot.norm();
            v.iter_mut().for_each(|z| *z *= phase);
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|z| *z /= norm);
        pairs[m] = (energies[slot], v);
    }
}

/// An entry selected as a localized zero mode.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeState {
    /// Position in the parent spectrum.
    pub index: usize,
    pub energy: Complex64,
    pub ipr: f64,
    pub left_weight: f64,
    pub right_weight: f64,
    pub state: Vec<Complex64>,
}

impl EdgeState {
    fn from_entry(index: usize, entry: &SpectrumEntry) -> Self {
        let (left_weight, right_weight) = localization(&entry.state);
        Self {
            index,
            energy: entry.energy,
            ipr: entry.ipr,
            left_weight,
            right_weight,
            state: entry.state.clone(),
        }
    }
}

/// Entries with `|Re E| <= energy_tol` (folded into the Floquet zone for
/// driven spectra) and `ipr >= ipr_min`.
pub fn edge_states(spectrum: &Spectrum, energy_tol: f64, ipr_min: f64) -> Vec<EdgeState> {
    spectrum
        .entries
        .iter()
        .enumerate()
        .filter(|(_, e)| spectrum.zone_re(e.energy).abs() <= energy_tol && e.ipr >= ipr_min)
        .map(|(j, e)| EdgeState::from_entry(j, e))
        .collect()
}

/// The entry with the largest IPR.
pub fn most_localized(spectrum: &Spectrum) -> Option<EdgeState> {
    spectrum
        .entries
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.ipr.total_cmp(&b.1.ipr))
        .map(|(j, e)| EdgeState::from_entry(j, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_ssh, LatticeConfig};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn ipr_extremes() {
        let mut single = vec![c(0.0); 10];
        single[3] = Complex64::new(0.0, 1.0);
        assert_eq!(ipr(&single).unwrap(), 1.0);
        let uniform = vec![c(0.1f64.sqrt()); 10];
        assert!((ipr(&uniform).unwrap() - 0.1).abs() < 1e-15);
        assert!(matches!(ipr(&[c(2.0)]), Err(Error::NotNormalized { .. })));
    }

    #[test]
    fn broken_measure() {
        let s = Spectrum {
            entries: vec![
                SpectrumEntry {
                    energy: Complex64::new(0.0, -1.25f64.sqrt()),
                    state: vec![],
                    ipr: 1.0,
                },
                SpectrumEntry {
                    energy: c(0.5),
                    state: vec![],
                    ipr: 1.0,
                },
            ],
            omega: None,
            near_defective: false,
        };
        assert!((pt_broken_measure(&s) - 1.25f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn dimerized_edges() {
        let h = build_ssh(&LatticeConfig::new(20, 0.0, 0.0).unwrap());
        let s = Spectrum::of_hamiltonian(&h).unwrap();
        let edges = edge_states(&s, DEFAULT_ENERGY_TOL, DEFAULT_IPR_MIN);
        assert_eq!(edges.len(), 2);
        for e in &edges {
            assert!((e.ipr - 1.0).abs() < 1e-12);
            assert!((e.left_weight + e.right_weight - 1.0).abs() < 1e-12);
        }
        assert!((edges[0].state[0].norm() - 1.0).abs() < 1e-12);
        assert!((edges[1].state[39].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hybridized_pair_is_separated() {
        let h = build_ssh(&LatticeConfig::new(20, 0.25, 0.0).unwrap());
        let s = Spectrum::of_hamiltonian(&h).unwrap();
        let edges = edge_states(&s, DEFAULT_ENERGY_TOL, DEFAULT_IPR_MIN);
        assert_eq!(edges.len(), 2);
        assert!(edges[0].left_weight > 0.95 && edges[1].right_weight > 0.95);
        for e in &edges {
            assert!((e.ipr - 0.8).abs() < 0.01, "{}", e.ipr);
        }
    }

    #[test]
    fn localization_window() {
        let mut state = vec![c(0.0); 40];
        state[3] = c(1.0);
        assert_eq!(localization(&state), (1.0, 0.0));
        state[3] = c(0.0);
        state[4] = c(1.0);
        assert_eq!(localization(&state), (0.0, 0.0));
    }
}
