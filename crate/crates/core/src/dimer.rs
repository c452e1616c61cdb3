//! Closed-form results for the two-site aggregate.
//!
//! `H = [[ω_A, −J], [−J, ω_B]]`, `tan 2θ = 2J/(ω_B − ω_A)`,
//! `|ε₁⟩ = cosθ|A⟩ + sinθ|B⟩` (lower), `|ε₂⟩ = −sinθ|A⟩ + cosθ|B⟩` (upper).
//! Thermal functions take the inverse temperature β in cm; β = ∞ is the ground state.

use nalgebra::{Complex, DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimerParams<T: Scalar = f64> {
    pub omega_a: T,
    pub omega_b: T,
    pub j: T,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DimerState {
    Lower,
    Upper,
}

/// Relative orientation of the two in-plane Bloch vectors at the optimum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Alignment {
    Parallel,
    Antiparallel,
}

impl<T: Scalar> DimerParams<T> {
    pub fn new(omega_a: T, omega_b: T, j: T) -> Self {
        Self { omega_a, omega_b, j }
    }

    /// `ω_A − ω_B`.
    pub fn detuning(&self) -> T {
        self.omega_a - self.omega_b
    }

    /// `√(J² + Δ²/4)`, half the exciton splitting.
    pub fn half_splitting(&self) -> T {
        let half_d = self.detuning() * lit::<T>(0.5);
        (self.j * self.j + half_d * half_d).sqrt()
    }

    pub fn energies(&self) -> (T, T) {
        let mid = (self.omega_a + self.omega_b) * lit::<T>(0.5);
        let r = self.half_splitting();
        (mid - r, mid + r)
    }
}

pub fn mixing_angle<T: Scalar>(p: &DimerParams<T>) -> Result<T> {
    if p.j == T::zero() && p.detuning() == T::zero() {
        return Err(Error::Domain("mixing angle undefined for degenerate uncoupled sites".into()));
    }
    Ok(lit::<T>(0.5) * (lit::<T>(2.0) * p.j).atan2(p.omega_b - p.omega_a))
}

/// `sin 2θ = 2J/√(4J² + Δ²)`.
pub fn sin2theta<T: Scalar>(p: &DimerParams<T>) -> Result<T> {
    mixing_angle(p)?;
    Ok(p.j / p.half_splitting())
}

/// `2 ± 2 sin 2θ` under the dipole field (+ for the lower state).
pub fn pure_state_qfi_dipole<T: Scalar>(p: &DimerParams<T>, which: DimerState) -> Result<T> {
    let s = sin2theta(p)?;
    let two = lit::<T>(2.0);
    Ok(match which {
        DimerState::Lower => two + two * s,
        DimerState::Upper => two - two * s,
    })
}

/// Maximum over local generators, `2 + 2|sin 2θ|`, with the optimal in-plane alignment.
pub fn pure_state_qfi_max<T: Scalar>(p: &DimerParams<T>, which: DimerState) -> Result<(T, Alignment)> {
    let s = sin2theta(p)?;
    let two = lit::<T>(2.0);
    let parallel = match which {
        DimerState::Lower => p.j >= T::zero(),
        DimerState::Upper => p.j <= T::zero(),
    };
    let a = if parallel { Alignment::Parallel } else { Alignment::Antiparallel };
    Ok((two + two * s.abs(), a))
}

fn check_beta<T: Scalar>(beta: T) -> Result<()> {
    if !(beta >= T::zero()) {
        return Err(Error::Domain(format!("inverse temperature {beta:?} must be >= 0")));
    }
    Ok(())
}

/// `p₁ − p₂ = tanh(β·half_splitting)`.
pub fn population_difference<T: Scalar>(p: &DimerParams<T>, beta: T) -> Result<T> {
    check_beta(beta)?;
    let x = beta * p.half_splitting();
    Ok(if x.is_finite() { x.tanh() } else { T::one() })
}

/// `(p₁, p₂)`.
pub fn populations<T: Scalar>(p: &DimerParams<T>, beta: T) -> Result<(T, T)> {
    let d = population_difference(p, beta)?;
    let half = lit::<T>(0.5);
    Ok((half * (T::one() + d), half * (T::one() - d)))
}

/// `2 + 2 tanh(β R) sin 2θ`.
pub fn thermal_qfi_dipole<T: Scalar>(p: &DimerParams<T>, beta: T) -> Result<T> {
    let two = lit::<T>(2.0);
    Ok(two + two * population_difference(p, beta)? * sin2theta(p)?)
}

/// `2 + 2 tanh(β R) |sin 2θ|`, attained with in-plane Bloch vectors.
pub fn thermal_qfi_max<T: Scalar>(p: &DimerParams<T>, beta: T) -> Result<T> {
    let two = lit::<T>(2.0);
    Ok(two + two * population_difference(p, beta)? * sin2theta(p)?.abs())
}

/// `Tr ρ_A² = cos⁴θ + sin⁴θ` for either exciton state.
pub fn purity_pure<T: Scalar>(theta: T) -> T {
    let (c, s) = (theta.cos(), theta.sin());
    let (c2, s2) = (c * c, s * s);
    c2 * c2 + s2 * s2
}

/// `(Tr ρ_AB², Tr ρ_A²)` of the thermal first-excitation state.
pub fn purity_thermal<T: Scalar>(p: &DimerParams<T>, beta: T) -> Result<(T, T)> {
    let theta = mixing_angle(p)?;
    let (p1, p2) = populations(p, beta)?;
    let (c2, s2) = (theta.cos().powi(2), theta.sin().powi(2));
    let a = p1 * c2 + p2 * s2;
    let b = T::one() - a;
    Ok((p1 * p1 + p2 * p2, a * a + b * b))
}

/// Thermal two-qubit density matrix; index `a + 2b` with a, b ∈ {0 = ground, 1 = excited}.
pub fn thermal_density<T: Scalar>(p: &DimerParams<T>, beta: T) -> Result<DMatrix<Complex<T>>> {
    let theta = mixing_angle(p)?;
    let (p1, p2) = populations(p, beta)?;
    let (c, s) = (theta.cos(), theta.sin());
    // |A⟩ = index 1, |B⟩ = index 2
    let e1 = [(1usize, c), (2usize, s)];
    let e2 = [(1usize, -s), (2usize, c)];
    let mut rho = DMatrix::from_element(4, 4, Complex::new(T::zero(), T::zero()));
    for (w, v) in [(p1, e1), (p2, e2)] {
        for &(i, a) in &v {
            for &(j, b) in &v {
                rho[(i, j)] += Complex::new(w * a * b, T::zero());
            }
        }
    }
    Ok(rho)
}

/// Eigenvalues below this (trace-normalized) are rounding noise and clamped to zero
/// before taking square roots.
const EIGEN_FLOOR: f64 = 1e-12;

fn hermitian_sqrt<T: Scalar>(m: &DMatrix<Complex<T>>) -> Result<DMatrix<Complex<T>>> {
    let eig = SymmetricEigen::new(m.clone());
    if let Some(e) = eig.eigenvalues.iter().find(|&&e| e < lit::<T>(-1e-10)) {
        return Err(Error::Domain(format!("density matrix has eigenvalue {e:?}")));
    }
    let scale = eig.eigenvalues.iter().fold(T::zero(), |a, &e| a + e.abs());
    let floor = lit::<T>(EIGEN_FLOOR) * scale;
    let d = DMatrix::from_diagonal(&eig.eigenvalues.map(|e| {
        let e = if e <= floor { T::zero() } else { e };
        Complex::new(e.sqrt(), T::zero())
    }));
    Ok(&eig.eigenvectors * d * eig.eigenvectors.adjoint())
}

/// Wootters concurrence of an arbitrary two-qubit density matrix.
///
/// The λ_i (square roots of the eigenvalues of ρρ̃) are taken as the singular values
/// of `√ρ·√ρ̃`, which keeps small λ_i accurate where eigenvalue square roots would not.
pub fn concurrence_wootters<T: Scalar>(rho: &DMatrix<Complex<T>>) -> Result<T> {
    if rho.nrows() != 4 || rho.ncols() != 4 {
        return Err(Error::Validation(format!("expected 4x4, got {}x{}", rho.nrows(), rho.ncols())));
    }
    let herm = (rho + rho.adjoint()) * Complex::new(lit::<T>(0.5), T::zero());
    let zero = Complex::new(T::zero(), T::zero());
    // σ_y ⊗ σ_y is real: −1 for |gg⟩↔|ee⟩ and +1 for |ge⟩↔|eg⟩
    let mut yy = DMatrix::from_element(4, 4, zero);
    let one = Complex::new(T::one(), T::zero());
    yy[(0, 3)] = -one;
    yy[(3, 0)] = -one;
    yy[(1, 2)] = one;
    yy[(2, 1)] = one;
    let sq = hermitian_sqrt(&herm)?;
    // √ρ̃ = Y √ρ* Y since Y is real, symmetric and involutory
    let sq_tilde = &yy * sq.map(|z| z.conj()) * &yy;
    let mut l: Vec<T> = (&sq * sq_tilde).singular_values().iter().copied().collect();
    l.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    Ok((l[0] - l[1] - l[2] - l[3]).max(T::zero()))
}

/// X-state shortcut `|(p₁ − p₂) sin 2θ|`.
pub fn concurrence_x_state<T: Scalar>(p: &DimerParams<T>, beta: T) -> Result<T> {
    Ok((population_difference(p, beta)? * sin2theta(p)?).abs())
}

/// Thermal concurrence via the full Wootters construction.
pub fn concurrence_thermal<T: Scalar>(p: &DimerParams<T>, beta: T) -> Result<T> {
    concurrence_wootters(&thermal_density(p, beta)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::beta_from_kelvin;
    use std::f64::consts::FRAC_PI_4;

    fn fmo() -> DimerParams<f64> {
        DimerParams::new(12328.0, 12472.0, 70.7)
    }

    #[test]
    fn angles() {
        assert!((mixing_angle(&DimerParams::new(0.0f64, 0.0, 1.0)).unwrap() - FRAC_PI_4).abs() < 1e-15);
        assert_eq!(mixing_angle(&DimerParams::new(0.0f64, 1.0, 0.0)).unwrap(), 0.0);
        assert!(matches!(mixing_angle(&DimerParams::new(1.0f64, 1.0, 0.0)), Err(Error::Domain(_))));
        let t = mixing_angle(&fmo()).unwrap();
        assert!((t - 0.388_144_197_191_431).abs() < 1e-12);
        assert!(((2.0 * t).sin() - sin2theta(&fmo()).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn eigenvector_convention_matches_diagonalization() {
        use crate::aggregate::{build_hamiltonian, diagonalize, AggregateSpec};
        for (a, b, j) in [(12328.0f64, 12472.0, 70.7), (0.0, 50.0, -30.0), (10.0, -5.0, 3.0)] {
            let p = DimerParams::new(a, b, j);
            let t = mixing_angle(&p).unwrap();
            let basis = diagonalize(&build_hamiltonian(&AggregateSpec::dimer(a, b, j), None).unwrap()).unwrap();
            let v = basis.state(0);
            let overlap = v[0] * t.cos() + v[1] * t.sin();
            assert!((overlap.norm() - 1.0).abs() < 1e-12);
            let (e1, e2) = p.energies();
            assert!((e1 - basis.energies()[0]).abs() < 1e-9 && (e2 - basis.energies()[1]).abs() < 1e-9);
        }
    }

    #[test]
    fn pure_values() {
        let bell = DimerParams::new(0.0f64, 0.0, 1.0);
        assert!((pure_state_qfi_dipole(&bell, DimerState::Lower).unwrap() - 4.0).abs() < 1e-15);
        let lo = pure_state_qfi_dipole(&fmo(), DimerState::Lower).unwrap();
        let hi = pure_state_qfi_dipole(&fmo(), DimerState::Upper).unwrap();
        assert!((lo - 3.401_271_900_777_86).abs() < 1e-10);
        assert!((hi - 0.598_728_099_222_14).abs() < 1e-10);
        let (m1, a1) = pure_state_qfi_max(&fmo(), DimerState::Lower).unwrap();
        let (m2, a2) = pure_state_qfi_max(&fmo(), DimerState::Upper).unwrap();
        assert_eq!(m1, m2);
        assert_eq!((a1, a2), (Alignment::Parallel, Alignment::Antiparallel));
        let mirror = DimerParams::new(12328.0, 12472.0, -70.7);
        let (mm, am) = pure_state_qfi_max(&mirror, DimerState::Lower).unwrap();
        assert!((mm - m1).abs() < 1e-15);
        assert_eq!(am, Alignment::Antiparallel);
        assert_eq!(pure_state_qfi_max(&DimerParams::new(0.0f64, 1.0, 0.0), DimerState::Lower).unwrap().0, 2.0);
    }

    #[test]
    fn thermal_values() {
        let b300 = beta_from_kelvin(300.0);
        assert!((thermal_qfi_dipole(&fmo(), b300).unwrap() - 2.629_732_001_783_7).abs() < 1e-10);
        assert_eq!(thermal_qfi_dipole(&fmo(), 0.0).unwrap(), 2.0);
        let neg = DimerParams::new(12328.0, 12472.0, -70.7);
        for i in 0..50 {
            let beta = 0.001 * 1.2f64.powi(i);
            assert!(thermal_qfi_dipole(&neg, beta).unwrap() <= 2.0);
            let d = thermal_qfi_dipole(&fmo(), beta).unwrap();
            let m = thermal_qfi_max(&fmo(), beta).unwrap();
            assert!((d - m).abs() < 1e-12);
        }
        assert!(matches!(thermal_qfi_dipole(&fmo(), -1.0), Err(Error::Domain(_))));
        assert_eq!(population_difference(&fmo(), f64::INFINITY).unwrap(), 1.0);
    }

    #[test]
    fn purities() {
        assert!((purity_pure(FRAC_PI_4) - 0.5).abs() < 1e-15);
        assert_eq!(purity_pure(0.0), 1.0);
        let t = mixing_angle(&fmo()).unwrap();
        let s = (2.0 * t).sin();
        assert!((purity_pure(t) - (1.0 - 0.5 * s * s)).abs() < 1e-14);
        assert!((purity_pure(t) - 0.754_554_632_511_3).abs() < 1e-10);
        let (ab, a) = purity_thermal(&fmo(), f64::INFINITY).unwrap();
        assert!((ab - 1.0).abs() < 1e-15 && (a - purity_pure(t)).abs() < 1e-14);
    }

    #[test]
    fn density_matrix_traces() {
        let rho = thermal_density(&fmo(), beta_from_kelvin(300.0)).unwrap();
        let tr: Complex<f64> = (0..4).map(|i| rho[(i, i)]).sum();
        assert!((tr.re - 1.0).abs() < 1e-14);
        let (ab, _) = purity_thermal(&fmo(), beta_from_kelvin(300.0)).unwrap();
        assert!(((&rho * &rho).trace().re - ab).abs() < 1e-14);
    }

    #[test]
    fn concurrence_paths_agree() {
        let c0 = concurrence_thermal(&fmo(), f64::INFINITY).unwrap();
        assert!((c0 - sin2theta(&fmo()).unwrap()).abs() < 1e-10);
        assert!(concurrence_thermal(&fmo(), 0.0).unwrap().abs() < 1e-10);
        for i in 0..40 {
            let beta = 1e-4 * 1.3f64.powi(i);
            let w = concurrence_thermal(&fmo(), beta).unwrap();
            let x = concurrence_x_state(&fmo(), beta).unwrap();
            assert!((w - x).abs() < 1e-10, "beta={beta}: {w} vs {x}");
            let fmax = thermal_qfi_max(&fmo(), beta).unwrap();
            assert!((fmax - 2.0 - 2.0 * x).abs() < 1e-12);
        }
    }

    #[test]
    fn wootters_rejects_unphysical() {
        let mut rho = DMatrix::from_element(4, 4, Complex::new(0.0, 0.0));
        rho[(0, 0)] = Complex::new(1.2, 0.0);
        rho[(1, 1)] = Complex::new(-0.2, 0.0);
        assert!(matches!(concurrence_wootters(&rho), Err(Error::Domain(_))));
    }

    #[test]
    fn bell_concurrence_is_one() {
        let h = 0.5;
        let mut rho = DMatrix::from_element(4, 4, Complex::new(0.0, 0.0));
        for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            rho[(i, j)] = Complex::new(h, 0.0);
        }
        assert!((concurrence_wootters::<f64>(&rho).unwrap() - 1.0).abs() < 1e-10);
    }
}
