use ptssh_core::bloch::{propagator_k, r_of_k, BlochParams};
use ptssh_core::floquet::{
    classify_symmetries, hf_analytic, hf_shifted, monodromy, monodromy_k_analytic,
    quasienergy_analytic, Monodromy,
};
use ptssh_core::lattice::{build_pt_ssh, build_ssh, GainSign, LatticeConfig};
use ptssh_core::linalg::{eigenvalues, floquet_decompose, fold_quasienergy};
use ptssh_core::{pauli, Complex64, DriveKind, DriveSpec, Error};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn zone_distance(a: Complex64, b: Complex64, omega: f64) -> f64 {
    let d = a - b;
    Complex64::new(fold_quasienergy(d.re, omega), d.im).norm()
}

#[test]
fn analytic_quasienergy_matches_numeric_two_site() {
    // Oracle: eigenvalues of the numerically exponentiated two-site drive.
    for &(gamma, omega) in &[(0.1, 2.0), (0.1, 3.0), (0.3, 0.9), (0.02, 2.0 / 3.0)] {
        let drive = DriveSpec::new(DriveKind::TwoSite, omega).unwrap();
        let (h1, h2) = drive.two_site_steps(1.0, gamma);
        let dec = Monodromy::new(&h1, &h2, drive.period())
            .unwrap()
            .decompose()
            .unwrap();
        let q = quasienergy_analytic(1.0, gamma, omega);
        for &eps in &dec.quasienergies {
            let d = zone_distance(eps, q.value, omega).min(zone_distance(eps, -q.value, omega));
            assert!(
                d < 1e-9,
                "gamma {gamma} omega {omega}: {eps} vs {}",
                q.value
            );
        }
    }
}

#[test]
fn broken_two_site_log_has_conjugate_pair() {
    let drive = DriveSpec::new(DriveKind::TwoSite, 2.0).unwrap();
    let (h1, h2) = drive.two_site_steps(1.0, 0.1);
    let g = monodromy(&h1, &h2, drive.period()).unwrap();
    let dec = floquet_decompose(&g, drive.period(), None).unwrap();
    let e = &dec.quasienergies;
    // {omega/2 + i eta, -omega/2 - i eta}: real parts both fold to -omega/2.
    assert!(e.iter().all(|z| (z.re + 1.0).abs() < 1e-9));
    assert!((e[0].im + e[1].im).abs() < 1e-9 && e[0].im.abs() > 1e-3);
}

#[test]
fn closed_form_monodromy_matches_propagators() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..5_000 {
        let v = rng.random_range(0.0..1.0);
        let p = BlochParams::new(
            v,
            1.0 - v,
            rng.random_range(0.0..1.0),
            rng.random_range(-PI..PI),
        );
        let omega = rng.random_range(0.3..5.0);
        let tau = PI / omega;
        let oracle = &propagator_k(&p.with_gamma(-p.gamma), tau) * &propagator_k(&p, tau);
        let g = monodromy_k_analytic(&p, omega);
        assert!(g.max_abs_diff(&oracle) <= 1e-12 * oracle.norm_one().max(1.0));
    }
}

#[test]
fn x_is_never_above_one_in_cosine() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10_000 {
        let r = rng.random_range(0.0..1.0);
        let q = quasienergy_analytic(r, rng.random_range(0.0..1.0), rng.random_range(0.3..5.0));
        assert!(1.0 - 2.0 * q.x * q.x <= 1.0 + 1e-12);
        assert!(q.value.re >= 0.0 && q.value.im >= 0.0);
        assert_eq!(q.is_broken(), q.value.im > 0.0 || q.x.abs() > 1.0);
    }
}

#[test]
fn symmetry_dichotomy_and_pseudo_hermiticity() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut real, mut complex) = (0, 0);
    for _ in 0..10_000 {
        let r = rng.random_range(0.0..1.0);
        let gamma = rng.random_range(0.0..1.0);
        let omega = rng.random_range(0.3..5.0);
        let hf = match hf_analytic(r, gamma, omega) {
            Ok(hf) => hf,
            Err(Error::ResonanceSingularity { .. }) => continue,
            Err(e) => panic!("{e}"),
        };
        let f = classify_symmetries(&hf.matrix()).unwrap();
        assert!(f.sublattice);
        if hf.curly_e.im == 0.0 {
            real += 1;
            assert!(
                f.pseudo_hermitian && f.chiral,
                "r {r} gamma {gamma} omega {omega}"
            );
        } else {
            complex += 1;
            assert!(
                !f.pseudo_hermitian && !f.chiral,
                "r {r} gamma {gamma} omega {omega}"
            );
        }
        let s = hf_shifted(r, gamma, omega).unwrap();
        let sx = pauli::sigma_x();
        let lhs = &(&sx * &s.matrix) * &sx;
        assert!(
            lhs.max_abs_diff(&s.matrix.adjoint()) <= 1e-10 * s.matrix.frobenius_norm().max(1.0)
        );
        assert!((s.matrix.trace() - Complex64::new(omega, 0.0)).norm() < 1e-10);
        if hf.is_broken() {
            assert!(s.curly_e_s.re.abs() < 1e-12);
        }
    }
    assert!(real > 1000 && complex > 1000);
}

#[test]
fn step_order_does_not_change_spectrum() {
    let cfg = LatticeConfig::new(20, 0.2, 0.2).unwrap();
    let drive = DriveSpec::new(DriveKind::PtPt, 0.7).unwrap();
    let (h1, h2) = drive.lattice_steps(&cfg).unwrap();
    let a = Monodromy::new(&h1, &h2, drive.period())
        .unwrap()
        .decompose()
        .unwrap();
    let b = Monodromy::new(&h2, &h1, drive.period())
        .unwrap()
        .decompose()
        .unwrap();
    for (x, y) in a.quasienergies.iter().zip(&b.quasienergies) {
        assert!(zone_distance(*x, *y, drive.omega) < 1e-10);
    }
}

#[test]
fn hermitian_drive_equals_static_ssh() {
    let cfg = LatticeConfig::new(10, 0.3, 0.0).unwrap();
    let drive = DriveSpec::new(DriveKind::PtPt, 1.3).unwrap();
    let (h1, h2) = drive.lattice_steps(&cfg).unwrap();
    let g = monodromy(&h1, &h2, drive.period()).unwrap();
    let h = build_ssh(&cfg);
    let g_static = monodromy(&h, &h, drive.period()).unwrap();
    assert!(g.max_abs_diff(&g_static) < 1e-14);
    assert!((g.determinant() - Complex64::new(1.0, 0.0)).norm() < 1e-10);
}

#[test]
fn high_frequency_drive_averages() {
    // PT-Hermitian between 2 gamma and 0 approaches H_PT(gamma); PT-PT
    // approaches H_SSH.
    let omega = 100.0;
    let drive_h = DriveSpec::new(DriveKind::PtHermitian, omega).unwrap();
    let drive_p = DriveSpec::new(DriveKind::PtPt, omega).unwrap();
    for &v in &[0.2, 0.5, 0.8] {
        let gamma = 0.2;
        let pt = LatticeConfig::new(20, v, 2.0 * gamma).unwrap();
        let eps = Monodromy::from_drive(&drive_h, &pt)
            .unwrap()
            .decompose()
            .unwrap()
            .quasienergies;
        let target = eigenvalues(&build_pt_ssh(
            &LatticeConfig::new(20, v, gamma).unwrap(),
            GainSign::Plus,
        ))
        .unwrap();
        assert!(hausdorff(&eps, &target) < 5.0 / omega, "pt-hermitian v {v}");

        let cfg = LatticeConfig::new(20, v, gamma).unwrap();
        let eps = Monodromy::from_drive(&drive_p, &cfg)
            .unwrap()
            .decompose()
            .unwrap()
            .quasienergies;
        let target = eigenvalues(&build_ssh(&cfg)).unwrap();
        assert!(hausdorff(&eps, &target) < 5.0 / omega, "pt-pt v {v}");
    }
}

fn hausdorff(a: &[Complex64], b: &[Complex64]) -> f64 {
    let one = |x: &[Complex64], y: &[Complex64]| {
        x.iter()
            .map(|p| y.iter().map(|q| (p - q).norm()).fold(f64::MAX, f64::min))
            .fold(0.0, f64::max)
    };
    one(a, b).max(one(b, a))
}

#[test]
fn analytic_hf_agrees_with_bloch_monodromy_log() {
    let p = BlochParams::new(0.25, 0.75, 0.2, 1.0);
    let omega = 0.7;
    let hf = hf_analytic(r_of_k(&p), p.gamma, omega).unwrap();
    let dec = floquet_decompose(&monodromy_k_analytic(&p, omega), 2.0 * PI / omega, None).unwrap();
    let numeric = dec.hamiltonian().unwrap();
    assert!(hf.matrix().max_abs_diff(&numeric) < 1e-9);
}
