//! Quantum Fisher information entanglement witnesses for Frenkel exciton aggregates.
//!
//! Energies are wavenumbers (cm⁻¹) with ħ = 1. The analytic core is generic over
//! [`Scalar`] (`f32`/`f64`); Monte Carlo, spectra and I/O are `f64`.

pub mod aggregate;
pub mod dimer;
pub mod disorder;
pub mod error;
pub mod optimize;
pub mod witness;
pub mod scalar;
pub mod spectra;
pub mod units;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type AggregateSpecF64 = aggregate::AggregateSpec<f64>;
pub type AggregateSpecF32 = aggregate::AggregateSpec<f32>;
pub type ExcitonBasisF64 = aggregate::ExcitonBasis<f64>;
pub type ExcitonBasisF32 = aggregate::ExcitonBasis<f32>;
pub type ThermalStateF64 = aggregate::ThermalState<f64>;
pub type ThermalStateF32 = aggregate::ThermalState<f32>;
pub type GeneratorF64 = witness::Generator<f64>;
pub type GeneratorF32 = witness::Generator<f32>;
pub type DimerParamsF64 = dimer::DimerParams<f64>;
pub type DimerParamsF32 = dimer::DimerParams<f32>;
