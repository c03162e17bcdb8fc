//! Built-in oracle suites comparing closed forms against numerics.

use crate::config::{Family, RunConfig};
use ptssh_core::bloch::{propagator_coefficients, propagator_k, r_of_k};
use ptssh_core::floquet::{
    classify_symmetries, hf_analytic, hf_shifted, monodromy_k_analytic, quasienergy_analytic,
};
use ptssh_core::linalg::fold_quasienergy;
use ptssh_core::{pauli, BlochParams, Complex64, ComplexMatrix, Error, Monodromy};
use serde_json::{json, Value};
use std::f64::consts::PI;

/// Size of the `perturb` test hook's injected error.
const PERTURBATION: f64 = 1e-6;
const GRID: usize = 16;

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyReport {
    pub family: Family,
    pub samples: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub mismatches: usize,
}

impl FamilyReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0 && self.max_deviation <= self.tolerance
    }

    fn to_json(&self) -> Value {
        json!({
            "family": self.family.name(),
            "passed": self.passed(),
            "samples": self.samples,
            "max_deviation": self.max_deviation,
            "tolerance": self.tolerance,
            "mismatches": self.mismatches,
        })
    }
}

pub fn run(cfg: &RunConfig) -> Vec<FamilyReport> {
    cfg.families
        .iter()
        .map(|&f| {
            let eps = if cfg.perturb == Some(f) {
                PERTURBATION
            } else {
                0.0
            };
            match f {
                Family::AnalyticMonodromy => analytic_monodromy(eps),
                Family::SymmetryDichotomy => symmetry_dichotomy(eps),
                Family::CoefficientReality => coefficient_reality(eps),
            }
        })
        .collect()
}

pub fn report_json(reports: &[FamilyReport]) -> Value {
    let failed: Vec<&str> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.family.name())
        .collect();
    json!({
        "tool": format!("ptssh {}", env!("CARGO_PKG_VERSION")),
        "passed": failed.is_empty(),
        "failed": failed,
        "families": reports.iter().map(FamilyReport::to_json).collect::<Vec<_>>(),
    })
}

fn lin(lo: f64, hi: f64, i: usize, n: usize) -> f64 {
    lo + (hi - lo) * i as f64 / (n - 1) as f64
}

/// Grid over `(a, gamma in [0,1], omega in [0.3,5])`.
fn grid(a_lo: f64, a_hi: f64) -> impl Iterator<Item = (f64, f64, f64)> {
    (0..GRID).flat_map(move |i| {
        (0..GRID).flat_map(move |j| {
            (0..GRID).map(move |l| {
                (
                    lin(a_lo, a_hi, i, GRID),
                    lin(0.0, 1.0, j, GRID),
                    lin(0.3, 5.0, l, GRID),
                )
            })
        })
    })
}

/// Closed-form monodromy against the product of step propagators, and
/// closed-form quasienergies against the logarithm of the numeric one.
fn analytic_monodromy(eps: f64) -> FamilyReport {
    let v = 0.25;
    let mut report = FamilyReport {
        family: Family::AnalyticMonodromy,
        samples: 0,
        max_deviation: 0.0,
        tolerance: 1e-8,
        mismatches: 0,
    };
    for (k, gamma, omega) in grid(-PI, PI) {
        let p = BlochParams::new(v, 1.0 - v, gamma, k);
        let tau = PI / omega;
        let oracle = &propagator_k(&p.with_gamma(-gamma), tau) * &propagator_k(&p, tau);
        let closed = monodromy_k_analytic(&p.with_gamma(gamma + eps), omega);
        let entry_dev = closed.max_abs_diff(&oracle) / oracle.norm_one().max(1.0);
        if entry_dev > 1e-12 {
            report.mismatches += 1;
        }

        let q = quasienergy_analytic(r_of_k(&p), gamma, omega);
        report.samples += 1;
        if q.is_exceptional() {
            continue;
        }
        let h1 = ptssh_core::bloch::h_pt_k(&p);
        let h2 = ptssh_core::bloch::h_pt_k(&p.with_gamma(-gamma));
        let numeric = match Monodromy::new(&h1, &h2, 2.0 * tau).and_then(|m| m.decompose()) {
            Ok(d) => d.quasienergies,
            Err(_) => {
                report.mismatches += 1;
                continue;
            }
        };
        for e in numeric {
            let d = [q.value, -q.value]
                .iter()
                .map(|a| {
                    let diff = e - a;
                    Complex64::new(fold_quasienergy(diff.re, omega), diff.im).norm()
                })
                .fold(f64::INFINITY, f64::min);
            report.max_deviation = report.max_deviation.max(d + eps);
        }
    }
    report
}

/// `{T,T,T}` exactly when the quasienergy is real, `{T,F,F}` otherwise;
/// the shifted Hamiltonian is `sigma_x`-pseudo-Hermitian throughout.
fn symmetry_dichotomy(eps: f64) -> FamilyReport {
    let mut report = FamilyReport {
        family: Family::SymmetryDichotomy,
        samples: 0,
        max_deviation: 0.0,
        tolerance: 1e-10,
        mismatches: 0,
    };
    let sx = pauli::sigma_x();
    for (r, gamma, omega) in grid(0.0, 1.0) {
        let hf = match hf_analytic(r, gamma, omega) {
            Ok(hf) => hf,
            Err(Error::ResonanceSingularity { .. }) => continue,
            Err(_) => {
                report.mismatches += 1;
                continue;
            }
        };
        report.samples += 1;
        let mut m = hf.matrix();
        m[(0, 0)] += Complex64::new(eps, 0.0);
        let flags = classify_symmetries(&m).expect("2x2");
        let real = hf.curly_e.im == 0.0;
        if !(flags.sublattice && flags.pseudo_hermitian == real && flags.chiral == real) {
            report.mismatches += 1;
        }
        match hf_shifted(r, gamma, omega) {
            Ok(s) => {
                let mut hs: ComplexMatrix = s.matrix;
                hs[(0, 1)] += Complex64::new(eps, 0.0);
                let dev =
                    (&(&sx * &hs) * &sx).max_abs_diff(&hs.adjoint()) / hs.frobenius_norm().max(1.0);
                report.max_deviation = report.max_deviation.max(dev);
            }
            Err(_) => report.mismatches += 1,
        }
    }
    report
}

/// The propagator coefficients `cos(Et)` and `sin(Et)/E` evaluated in real
/// arithmetic against complex arithmetic with `E = sqrt(r^2 - gamma^2)`.
fn coefficient_reality(eps: f64) -> FamilyReport {
    let mut report = FamilyReport {
        family: Family::CoefficientReality,
        samples: 0,
        max_deviation: 0.0,
        tolerance: 1e-12,
        mismatches: 0,
    };
    for (r, gamma, omega) in grid(0.0, 1.0) {
        let t = PI / omega;
        let e = Complex64::new(r * r - gamma * gamma, eps).sqrt();
        if (e * t).norm() < 1e-3 {
            continue;
        }
        report.samples += 1;
        let cos = (e * t).cos();
        let sinc = (e * t).sin() / e;
        let (c, s) = propagator_coefficients(r, gamma, t);
        let dev = [(cos, c), (sinc, s)]
            .iter()
            .map(|(z, x)| (z - x).norm() / z.norm().max(1.0))
            .fold(0.0, f64::max);
        report.max_deviation = report.max_deviation.max(dev);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_families_pass_unperturbed() {
        for r in [
            analytic_monodromy(0.0),
            symmetry_dichotomy(0.0),
            coefficient_reality(0.0),
        ] {
            assert!(r.passed(), "{r:?}");
            assert!(r.samples > 1000);
        }
    }

    #[test]
    fn perturbation_is_detected() {
        for r in [
            analytic_monodromy(PERTURBATION),
            symmetry_dichotomy(PERTURBATION),
            coefficient_reality(PERTURBATION),
        ] {
            assert!(!r.passed(), "{r:?}");
        }
    }
}
