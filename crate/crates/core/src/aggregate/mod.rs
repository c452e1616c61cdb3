//! Site-basis Hamiltonians, exciton bases and thermal populations.

mod analytic;
mod basis;
mod config;
mod hamiltonian;
mod spec;
mod thermal;

pub use analytic::{
    analytic_chain_basis, analytic_chain_state, analytic_ring_state, chain_energy, participation_ratio,
    ring_energy, transition_dipole_chain,
};
pub use basis::{diagonalize, diagonalize_hermitian, ExcitonBasis};
pub use config::{AggregateConfig, SiteEnergies};
pub use hamiltonian::{build_hamiltonian, site_positions};
pub use spec::{
    min_separation, AggregateSpec, Boundary, Coupling, CouplingRange, DisorderDraw, DisorderSpec, Topology,
};
pub use thermal::{
    boltzmann_populations, ground_state_distribution, thermal_state, thermal_state_beta, Temperature,
    ThermalState,
};
