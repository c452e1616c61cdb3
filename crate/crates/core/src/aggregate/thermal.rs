use super::basis::ExcitonBasis;
use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};
use crate::units::K_B_CM;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Temperature<T: Scalar = f64> {
    Kelvin(T),
    /// The T → 0 limit: ground state of the subspace, degenerate minima equi-weighted.
    Zero,
}

/// Boltzmann populations over the first-excitation eigenstates.
#[derive(Clone, Debug, PartialEq)]
pub struct ThermalState<T: Scalar = f64> {
    pub temperature: Temperature<T>,
    populations: Vec<T>,
}

impl<T: Scalar> ThermalState<T> {
    pub fn populations(&self) -> &[T] {
        &self.populations
    }

    pub fn len(&self) -> usize {
        self.populations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.populations.is_empty()
    }
}

/// Populations `exp(−β(ε_n − ε_min)) / Z` for inverse temperature β in cm (β = 1/k_BT).
///
/// β = 0 is the infinite-temperature limit; β must be finite and non-negative.
pub fn boltzmann_populations<T: Scalar>(energies: &[T], beta: T) -> Result<Vec<T>> {
    if !(beta >= T::zero()) || !beta.is_finite() {
        return Err(Error::Domain(format!("inverse temperature {beta:?} must be finite and >= 0")));
    }
    if energies.is_empty() {
        return Err(Error::Validation("no energies".into()));
    }
    let emin = energies.iter().copied().fold(energies[0], |a, b| a.min(b));
    let w: Vec<T> = energies.iter().map(|&e| (-(beta * (e - emin))).exp()).collect();
    let z = w.iter().copied().fold(T::zero(), |a, b| a + b);
    Ok(w.into_iter().map(|x| x / z).collect())
}

/// Thermal state of the first-excitation subspace at temperature `t_kelvin` (> 0, may be +∞).
pub fn thermal_state<T: Scalar>(basis: &ExcitonBasis<T>, t_kelvin: T) -> Result<ThermalState<T>> {
    if !(t_kelvin > T::zero()) {
        return Err(Error::Domain(format!(
            "temperature must be > 0 K, got {t_kelvin:?}; use ground_state_distribution for T = 0"
        )));
    }
    let beta = T::one() / (lit::<T>(K_B_CM) * t_kelvin);
    Ok(ThermalState {
        temperature: Temperature::Kelvin(t_kelvin),
        populations: boltzmann_populations(basis.energies(), beta)?,
    })
}

/// Thermal state parameterized by inverse temperature β in cm.
pub fn thermal_state_beta<T: Scalar>(basis: &ExcitonBasis<T>, beta: T) -> Result<ThermalState<T>> {
    let populations = boltzmann_populations(basis.energies(), beta)?;
    let temperature = if beta == T::zero() {
        Temperature::Kelvin(T::max_value().unwrap_or_else(T::one))
    } else {
        Temperature::Kelvin(T::one() / (lit::<T>(K_B_CM) * beta))
    };
    Ok(ThermalState {
        temperature,
        populations,
    })
}

/// Zero-temperature limit: equal weight on all states degenerate with the lowest energy.
pub fn ground_state_distribution<T: Scalar>(basis: &ExcitonBasis<T>) -> ThermalState<T> {
    let e = basis.energies();
    let emin = e[0];
    let tol = lit::<T>(1e-9) * emin.abs().max(T::one());
    let ground: Vec<bool> = e.iter().map(|&x| (x - emin).abs() <= tol).collect();
    let count = ground.iter().filter(|&&g| g).count();
    let w = T::one() / lit::<T>(count as f64);
    ThermalState {
        temperature: Temperature::Zero,
        populations: ground.into_iter().map(|g| if g { w } else { T::zero() }).collect(),
    }
}
