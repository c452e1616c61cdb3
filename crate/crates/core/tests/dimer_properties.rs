use exciton_qfi::aggregate::{build_hamiltonian, diagonalize, thermal_state_beta, AggregateSpec};
use exciton_qfi::dimer::*;
use exciton_qfi::units::beta_from_kelvin;
use exciton_qfi::witness::{dense_oracle_qfi, qfi_thermal_dipole, DenseState, Generator};
use std::f64::consts::FRAC_PI_2;

/// Dimer with mixing angle θ and half-splitting 100 cm⁻¹ around 12 000 cm⁻¹.
fn params(theta: f64) -> DimerParams {
    let half = 100.0;
    let delta = 2.0 * half * (2.0 * theta).cos();
    let j = half * (2.0 * theta).sin();
    DimerParams::new(12_000.0 - delta / 2.0, 12_000.0 + delta / 2.0, j)
}

fn theta_grid() -> Vec<f64> {
    (0..21).map(|i| 0.01 + (FRAC_PI_2 - 0.02) * i as f64 / 20.0).collect()
}

fn temperature_grid() -> Vec<f64> {
    (0..21).map(|i| 10f64.powf(0.5 + 0.15 * i as f64)).collect()
}

#[test]
fn fig2_endpoints() {
    let bell = DimerParams::new(0.0, 0.0, 1.0);
    assert_eq!(pure_state_qfi_dipole(&bell, DimerState::Lower).unwrap(), 4.0);
    assert_eq!(pure_state_qfi_dipole(&bell, DimerState::Upper).unwrap(), 0.0);
    // θ = 0 and θ = π/2: uncoupled sites
    for p in [DimerParams::new(0.0, 1.0, 0.0), DimerParams::new(1.0, 0.0, 0.0)] {
        assert_eq!(pure_state_qfi_dipole(&p, DimerState::Lower).unwrap(), 2.0);
    }
}

#[test]
fn fmo_values_against_dense_density_matrix() {
    let p = DimerParams::new(12328.0, 12472.0, 70.7);
    let f1: f64 = pure_state_qfi_dipole(&p, DimerState::Lower).unwrap();
    assert!((f1 - 3.4013).abs() < 5e-5);
    let beta = beta_from_kelvin(300.0);
    let rho = thermal_density(&p, beta).unwrap();
    let dense = dense_oracle_qfi(DenseState::Density(&rho), &Generator::dipole_field(2)).unwrap();
    let closed: f64 = thermal_qfi_dipole(&p, beta).unwrap();
    assert!((closed - dense).abs() <= 1e-10, "{closed} vs {dense}");
    assert!((closed - 2.6297).abs() < 5e-5);
}

#[test]
fn theta_temperature_grid_matches_subspace_path() {
    for theta in theta_grid() {
        let p = params(theta);
        let spec = AggregateSpec::dimer(p.omega_a, p.omega_b, p.j);
        let basis = diagonalize(&build_hamiltonian(&spec, None).unwrap()).unwrap();
        for t in temperature_grid() {
            let beta = beta_from_kelvin(t);
            let state = thermal_state_beta(&basis, beta).unwrap();
            let general = qfi_thermal_dipole(&basis, &state).unwrap();
            let closed: f64 = thermal_qfi_dipole(&p, beta).unwrap();
            assert!((general - closed).abs() <= 1e-10, "θ={theta} T={t}: {general} vs {closed}");
        }
    }
}

#[test]
fn fig3_properties() {
    let mut betas: Vec<f64> = temperature_grid().into_iter().map(beta_from_kelvin).collect();
    betas.push(f64::INFINITY);
    for theta in theta_grid() {
        let p = params(theta);
        let neg = DimerParams::new(p.omega_a, p.omega_b, -p.j);
        for &beta in &betas {
            let dip_neg = thermal_qfi_dipole(&neg, beta).unwrap();
            assert!(dip_neg <= 2.0 + 1e-12, "J<0 cell witnessed: {dip_neg}");
            let fmax = thermal_qfi_max(&p, beta).unwrap();
            let fmax_neg = thermal_qfi_max(&neg, beta).unwrap();
            assert!((fmax - fmax_neg).abs() <= 1e-12);
            let c = concurrence_thermal(&p, beta).unwrap();
            assert!((fmax - (2.0 + 2.0 * c)).abs() <= 1e-10);
            let rho = thermal_density(&p, beta).unwrap();
            let w = concurrence_wootters(&rho).unwrap();
            assert!((w - concurrence_x_state(&p, beta).unwrap()).abs() <= 1e-10);
            // witness consistency
            let dip = thermal_qfi_dipole(&p, beta).unwrap();
            assert!(dip <= fmax + 1e-12);
            assert!((dip - fmax).abs() <= 1e-12);
            assert!(dip_neg < fmax_neg);
        }
    }
}

#[test]
fn purity_condition_on_beta_grid() {
    for theta in theta_grid() {
        let p = params(theta);
        for i in 0..50 {
            let beta = 10f64.powf(-4.0 + 5.0 * i as f64 / 49.0);
            let (ab, a) = purity_thermal(&p, beta).unwrap();
            assert!(a < ab, "θ={theta} β={beta}: {a} !< {ab}");
        }
    }
}

#[test]
fn monotone_in_temperature() {
    for theta in theta_grid() {
        let p = params(theta);
        let mut last = (f64::INFINITY, f64::INFINITY);
        for i in 0..400 {
            let t = 1.0 + 5.0 * i as f64;
            let beta = beta_from_kelvin(t);
            let f = thermal_qfi_max(&p, beta).unwrap();
            let c = concurrence_thermal(&p, beta).unwrap();
            assert!(f <= last.0 + 1e-14 && c <= last.1 + 1e-14, "θ={theta} T={t}");
            last = (f, c);
        }
    }
}
