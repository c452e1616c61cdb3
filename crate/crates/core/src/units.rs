//! Physical constants. Model energies are wavenumbers (cm⁻¹) with ħ = 1.

/// Boltzmann constant in cm⁻¹/K.
pub const K_B_CM: f64 = 0.695_034_8;

/// Avogadro constant, mol⁻¹.
pub const AVOGADRO: f64 = 6.022_140_76e23;

/// Vacuum permittivity, F/m.
pub const EPSILON_0: f64 = 8.854_187_812_8e-12;

/// Speed of light, m/s.
pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e8;

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Inverse temperature β = 1/(k_B T) in cm for a temperature in kelvin.
pub fn beta_from_kelvin(t: f64) -> f64 {
    1.0 / (K_B_CM * t)
}

pub fn kelvin_from_beta(beta: f64) -> f64 {
    1.0 / (K_B_CM * beta)
}
