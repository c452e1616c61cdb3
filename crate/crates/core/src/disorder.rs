//! Monte Carlo averages of the thermal dipole-field QFI over static disorder.
//!
//! Realization `i` of a sweep draws from `ChaCha8Rng::seed_from_u64(seed)` on stream `i`:
//! N standard normals for the energies, then N for the positions, each scaled by its σ.
//! Both blocks are always drawn, so different σ values share the same underlying
//! normals (common random numbers) and a realization never depends on thread scheduling.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::aggregate::{
    build_hamiltonian, diagonalize, AggregateSpec, CouplingRange, DisorderDraw, DisorderSpec, ExcitonBasis,
};
use crate::error::{Error, Result};
use crate::witness::classify_depth;

/// Consecutive rejected position draws tolerated before giving up.
pub const MAX_CONSECUTIVE_REJECTIONS: u32 = 100;

pub fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn draw(rng: &mut ChaCha8Rng, n: usize, disorder: &DisorderSpec) -> DisorderDraw {
    let mut normals = |s: f64| -> Vec<f64> {
        (0..n)
            .map(|_| {
                let z: f64 = StandardNormal.sample(rng);
                s * z
            })
            .collect()
    };
    let energy_offsets = normals(disorder.sigma_site_energy);
    let position_offsets = normals(disorder.sigma_position);
    DisorderDraw {
        energy_offsets,
        position_offsets,
    }
}

#[derive(Clone, Debug)]
pub struct Realization {
    pub hamiltonian: DMatrix<f64>,
    pub draw: DisorderDraw,
    /// Position draws rejected before this one was accepted.
    pub resamples: u32,
}

/// Realization `index` of the ensemble defined by `disorder` (seeded by `disorder.seed`).
pub fn sample_realization(spec: &AggregateSpec, disorder: &DisorderSpec, index: u64) -> Result<Realization> {
    disorder.validate()?;
    if index >= disorder.n_realizations {
        return Err(Error::Domain(format!(
            "realization index {index} >= M = {}",
            disorder.n_realizations
        )));
    }
    let mut rng = stream_rng(disorder.seed, index);
    let n = spec.n_sites();
    let mut resamples = 0;
    loop {
        let d = draw(&mut rng, n, disorder);
        match build_hamiltonian(spec, Some(&d)) {
            Ok(h) => {
                return Ok(Realization {
                    hamiltonian: h,
                    draw: d,
                    resamples,
                })
            }
            Err(Error::RejectedDraw(msg)) => {
                resamples += 1;
                if resamples > MAX_CONSECUTIVE_REJECTIONS {
                    return Err(Error::Config(format!(
                        "more than {MAX_CONSECUTIVE_REJECTIONS} consecutive rejected position draws \
                         (sigma_dx = {}): {msg}",
                        disorder.sigma_position
                    )));
                }
            }
            Err(e) => return Err(e),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DisorderMode {
    /// Site energies vary, σ in units of J.
    Diagonal,
    /// Positions vary, σ in lattice units.
    OffDiagonal,
}

/// Sweep over one disorder strength axis and a J/k_BT axis at fixed N.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub n_sites: usize,
    #[serde(default)]
    pub site_energy_cm1: f64,
    pub jprime_cm1: f64,
    #[serde(default = "one")]
    pub lattice_a: f64,
    #[serde(default)]
    pub coupling_range: CouplingRange,
    pub mode: DisorderMode,
    /// σ_δE/J (diagonal) or σ_δx/a (off-diagonal).
    pub sigma_grid: Vec<f64>,
    /// J/k_BT with J = J′/a³; 0 is the infinite-temperature limit.
    pub j_over_kbt: Vec<f64>,
    pub realizations: u64,
    pub seed: u64,
}

fn one() -> f64 {
    1.0
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.sigma_grid.is_empty() || self.j_over_kbt.is_empty() {
            return Err(Error::Config("sweep grids must be nonempty".into()));
        }
        if self.sigma_grid.iter().any(|s| !(*s >= 0.0) || !s.is_finite()) {
            return Err(Error::Config("disorder strengths must be finite and >= 0".into()));
        }
        if self.j_over_kbt.iter().any(|x| !(*x >= 0.0) || !x.is_finite()) {
            return Err(Error::Config("J/k_BT values must be finite and >= 0".into()));
        }
        if self.realizations == 0 {
            return Err(Error::Config("need at least one realization".into()));
        }
        if self.jprime_cm1 == 0.0 {
            return Err(Error::Config("J' must be nonzero".into()));
        }
        self.base_spec().validate()
    }

    pub fn base_spec(&self) -> AggregateSpec {
        let mut s = AggregateSpec::disordered_chain(self.n_sites, self.site_energy_cm1, self.jprime_cm1, self.lattice_a)
            .with_coupling_range(self.coupling_range);
        s.site_energies = vec![self.site_energy_cm1; self.n_sites];
        s
    }

    /// `J = J′/a³` in cm⁻¹ (signed).
    pub fn j_cm1(&self) -> f64 {
        self.jprime_cm1 / self.lattice_a.powi(3)
    }

    pub fn disorder_spec(&self, sigma: f64) -> DisorderSpec {
        let (e, x) = match self.mode {
            DisorderMode::Diagonal => (sigma * self.j_cm1().abs(), 0.0),
            DisorderMode::OffDiagonal => (0.0, sigma),
        };
        DisorderSpec {
            sigma_site_energy: e,
            sigma_position: x,
            seed: self.seed,
            n_realizations: self.realizations,
        }
    }

    /// SHA-256 of the canonical JSON form of this config.
    pub fn hash(&self) -> String {
        let json = serde_json::to_string(self).expect("config serializes");
        hex::encode(Sha256::digest(json.as_bytes()))
    }
}

/// Thermal dipole-field QFI of one basis at inverse temperature β (cm).
pub fn thermal_dipole_qfi_beta(basis: &ExcitonBasis, beta: f64) -> Result<f64> {
    let state = crate::aggregate::thermal_state_beta(basis, beta)?;
    crate::witness::qfi_thermal_dipole(basis, &state)
}

/// One (σ, J/k_BT) cell, laid out as the CSV row.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepCell {
    pub mode: DisorderMode,
    pub sigma_over_j: f64,
    pub j_over_kbt: f64,
    pub n_sites: usize,
    pub m: u64,
    pub mean_fq_per_n: f64,
    pub stderr: f64,
    /// Depth witnessed by `mean − 2·stderr`.
    pub depth: usize,
    pub resamples: u64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepMetadata {
    pub seed: u64,
    pub config_hash: String,
    pub coupling_range: CouplingRange,
    pub mode: DisorderMode,
    pub n_sites: usize,
    pub realizations: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepResult {
    pub cells: Vec<SweepCell>,
    pub metadata: SweepMetadata,
}

fn beta_for(x: f64, j: f64) -> f64 {
    x / j.abs()
}

pub fn run_sweep(config: &SweepConfig) -> Result<SweepResult> {
    config.validate()?;
    let spec = config.base_spec();
    let n = config.n_sites;
    let nf = n as f64;
    let j = config.j_cm1();
    let betas: Vec<f64> = config.j_over_kbt.iter().map(|&x| beta_for(x, j)).collect();
    let m = config.realizations;
    let mut cells = Vec::with_capacity(config.sigma_grid.len() * betas.len());

    for &sigma in &config.sigma_grid {
        let disorder = config.disorder_spec(sigma);
        let per_realization: Vec<(Vec<f64>, u32)> = (0..m)
            .into_par_iter()
            .map(|i| {
                let cell_err = |e: Error| Error::Cell {
                    sigma,
                    index: i,
                    source: Box::new(e),
                };
                let r = sample_realization(&spec, &disorder, i).map_err(cell_err)?;
                let basis = diagonalize(&r.hamiltonian).map_err(cell_err)?;
                let fs = betas
                    .iter()
                    .map(|&b| thermal_dipole_qfi_beta(&basis, b))
                    .collect::<Result<Vec<_>>>()
                    .map_err(cell_err)?;
                Ok((fs, r.resamples))
            })
            .collect::<Result<_>>()?;

        let resamples: u64 = per_realization.iter().map(|(_, r)| *r as u64).sum();
        for (t, &x) in config.j_over_kbt.iter().enumerate() {
            // sequential reduction in index order keeps the sums bit-identical across thread counts
            let (mut mean, mut m2) = (0.0, 0.0);
            for (k, (fs, _)) in per_realization.iter().enumerate() {
                let v = fs[t] / nf;
                let delta = v - mean;
                mean += delta / (k + 1) as f64;
                m2 += delta * (v - mean);
            }
            let stderr = if m > 1 {
                (m2 / (m - 1) as f64).max(0.0).sqrt() / (m as f64).sqrt()
            } else {
                0.0
            };
            cells.push(SweepCell {
                mode: config.mode,
                sigma_over_j: sigma,
                j_over_kbt: x,
                n_sites: n,
                m,
                mean_fq_per_n: mean,
                stderr,
                depth: classify_depth((mean - 2.0 * stderr) * nf, n).depth,
                resamples,
                seed: config.seed,
            });
        }
    }
    Ok(SweepResult {
        cells,
        metadata: SweepMetadata {
            seed: config.seed,
            config_hash: config.hash(),
            coupling_range: config.coupling_range,
            mode: config.mode,
            n_sites: n,
            realizations: m,
        },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DepthCell {
    pub sigma_over_j: f64,
    pub j_over_kbt: f64,
    pub depth: usize,
    pub depth_of_mean: usize,
}

/// Conservative (`mean − 2·stderr`) and plain witnessed depth for every cell.
pub fn summarize_depth(result: &SweepResult) -> Vec<DepthCell> {
    result
        .cells
        .iter()
        .map(|c| {
            let nf = c.n_sites as f64;
            DepthCell {
                sigma_over_j: c.sigma_over_j,
                j_over_kbt: c.j_over_kbt,
                depth: classify_depth((c.mean_fq_per_n - 2.0 * c.stderr) * nf, c.n_sites).depth,
                depth_of_mean: classify_depth(c.mean_fq_per_n * nf, c.n_sites).depth,
            }
        })
        .collect()
}
