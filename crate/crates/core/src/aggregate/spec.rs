use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Topology {
    Dimer,
    Chain,
    Ring,
    DisorderedChain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Boundary {
    #[default]
    Open,
    Periodic,
}

/// Which pairs a 1/r³ dipole law couples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CouplingRange {
    /// Every pair of sites.
    #[default]
    Full,
    /// Adjacent sites only.
    NearestNeighbor,
}

/// Inter-site coupling rule, in cm⁻¹.
///
/// Scalar couplings follow the J-aggregate convention: `J > 0` is stored as the
/// matrix entry `-J`, and the dipole law gives `J_mn = -J' / |x_m - x_n|³`.
#[derive(Clone, Debug, PartialEq)]
pub enum Coupling<T: Scalar = f64> {
    /// Explicit symmetric matrix of `J_mn` with zero diagonal (entries used as-is).
    Matrix(DMatrix<T>),
    NearestNeighbor(T),
    DipoleLaw {
        jprime: T,
        lattice_a: T,
        range: CouplingRange,
    },
}

/// Declarative description of a model aggregate.
#[derive(Clone, Debug, PartialEq)]
pub struct AggregateSpec<T: Scalar = f64> {
    pub topology: Topology,
    pub site_energies: Vec<T>,
    pub coupling: Coupling<T>,
    pub boundary: Boundary,
}

impl<T: Scalar> AggregateSpec<T> {
    pub fn dimer(omega_a: T, omega_b: T, j: T) -> Self {
        Self {
            topology: Topology::Dimer,
            site_energies: vec![omega_a, omega_b],
            coupling: Coupling::NearestNeighbor(j),
            boundary: Boundary::Open,
        }
    }

    pub fn chain(n_sites: usize, omega: T, j: T) -> Self {
        Self {
            topology: Topology::Chain,
            site_energies: vec![omega; n_sites],
            coupling: Coupling::NearestNeighbor(j),
            boundary: Boundary::Open,
        }
    }

    pub fn ring(n_sites: usize, omega: T, j: T) -> Self {
        Self {
            topology: Topology::Ring,
            site_energies: vec![omega; n_sites],
            coupling: Coupling::NearestNeighbor(j),
            boundary: Boundary::Periodic,
        }
    }

    /// Linear dye aggregate with the untruncated 1/r³ dipole law.
    pub fn disordered_chain(n_sites: usize, omega: T, jprime: T, lattice_a: T) -> Self {
        Self {
            topology: Topology::DisorderedChain,
            site_energies: vec![omega; n_sites],
            coupling: Coupling::DipoleLaw {
                jprime,
                lattice_a,
                range: CouplingRange::Full,
            },
            boundary: Boundary::Open,
        }
    }

    pub fn with_coupling_range(mut self, range: CouplingRange) -> Self {
        if let Coupling::DipoleLaw { range: r, .. } = &mut self.coupling {
            *r = range;
        }
        self
    }

    pub fn n_sites(&self) -> usize {
        self.site_energies.len()
    }

    /// Nearest-neighbour coupling magnitude scale `J` (for the dipole law `J'/a³`).
    pub fn coupling_scale(&self) -> Option<T> {
        match &self.coupling {
            Coupling::NearestNeighbor(j) => Some(*j),
            Coupling::DipoleLaw {
                jprime, lattice_a, ..
            } => Some(*jprime / lattice_a.powi(3)),
            Coupling::Matrix(_) => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n_sites();
        if n < 2 {
            return Err(Error::Validation(format!("aggregate needs at least 2 sites, got {n}")));
        }
        if self.site_energies.iter().any(|e| !e.is_finite()) {
            return Err(Error::Validation("non-finite site energy".into()));
        }
        match self.topology {
            Topology::Dimer if n != 2 => {
                return Err(Error::Validation(format!("dimer must have 2 sites, got {n}")))
            }
            Topology::Ring if self.boundary != Boundary::Periodic => {
                return Err(Error::Validation("ring requires periodic boundary".into()))
            }
            Topology::Ring if n < 3 => {
                return Err(Error::Validation("ring requires at least 3 sites".into()))
            }
            Topology::Chain | Topology::DisorderedChain if self.boundary != Boundary::Open => {
                return Err(Error::Validation("chains use open boundaries".into()))
            }
            Topology::DisorderedChain if !matches!(self.coupling, Coupling::DipoleLaw { .. }) => {
                return Err(Error::Validation(
                    "disordered chain requires dipole-law coupling".into(),
                ))
            }
            _ => {}
        }
        match &self.coupling {
            Coupling::Matrix(m) => {
                if m.nrows() != n || m.ncols() != n {
                    return Err(Error::Validation(format!(
                        "coupling matrix is {}x{}, expected {n}x{n}",
                        m.nrows(),
                        m.ncols()
                    )));
                }
                let scale = m.iter().fold(T::one(), |acc, x| acc.max(x.abs()));
                let tol = T::validation_tol() * scale;
                for i in 0..n {
                    if m[(i, i)] != T::zero() {
                        return Err(Error::Validation(format!(
                            "coupling matrix has nonzero diagonal at {i}"
                        )));
                    }
                    for j in (i + 1)..n {
                        if (m[(i, j)] - m[(j, i)]).abs() > tol {
                            return Err(Error::Validation(format!(
                                "coupling matrix not symmetric at ({i}, {j})"
                            )));
                        }
                    }
                }
            }
            Coupling::NearestNeighbor(j) => {
                if !j.is_finite() {
                    return Err(Error::Validation("non-finite coupling".into()));
                }
            }
            Coupling::DipoleLaw {
                jprime, lattice_a, ..
            } => {
                if !jprime.is_finite() || !(*lattice_a > T::zero()) || !lattice_a.is_finite() {
                    return Err(Error::Validation(
                        "dipole law needs finite J' and lattice spacing a > 0".into(),
                    ));
                }
                if self.boundary == Boundary::Periodic {
                    return Err(Error::Validation(
                        "dipole-law coupling is only defined for open chains".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Gaussian static disorder model for linear aggregates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DisorderSpec {
    /// Standard deviation of site-energy offsets, cm⁻¹.
    pub sigma_site_energy: f64,
    /// Standard deviation of site displacements, lattice units.
    pub sigma_position: f64,
    pub seed: u64,
    pub n_realizations: u64,
}

impl DisorderSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.sigma_site_energy >= 0.0) || !self.sigma_site_energy.is_finite() {
            return Err(Error::Validation("sigma_site_energy must be finite and >= 0".into()));
        }
        if !(self.sigma_position >= 0.0) || !self.sigma_position.is_finite() {
            return Err(Error::Validation("sigma_position must be finite and >= 0".into()));
        }
        if self.n_realizations == 0 {
            return Err(Error::Validation("need at least one realization".into()));
        }
        Ok(())
    }
}

/// One sampled set of static perturbations.
#[derive(Clone, Debug, PartialEq)]
pub struct DisorderDraw<T: Scalar = f64> {
    /// δE_n in cm⁻¹.
    pub energy_offsets: Vec<T>,
    /// δx_n in lattice units.
    pub position_offsets: Vec<T>,
}

impl<T: Scalar> DisorderDraw<T> {
    pub fn zero(n_sites: usize) -> Self {
        Self {
            energy_offsets: vec![T::zero(); n_sites],
            position_offsets: vec![T::zero(); n_sites],
        }
    }

    /// The same draw with site labels reversed.
    pub fn mirrored(&self) -> Self {
        let mut e = self.energy_offsets.clone();
        e.reverse();
        // reversing the chain maps x_m -> -x_{N-1-m}, so displacements flip sign
        let p = self.position_offsets.iter().rev().map(|&x| -x).collect();
        Self {
            energy_offsets: e,
            position_offsets: p,
        }
    }
}

/// Minimum allowed separation between neighbouring sites, in lattice units.
pub fn min_separation<T: Scalar>() -> T {
    lit(0.1)
}
