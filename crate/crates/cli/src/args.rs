use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "exqfi", version, about = "QFI entanglement witnesses for exciton aggregates")]
pub struct Cli {
    /// Output directory for data files and the run manifest.
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
    /// Seed for stochastic commands (required by `optimize` and `disorder`).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Cross-check against the dense 2^N evaluation where N is small enough.
    #[arg(long, global = true)]
    pub oracle: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dimer purity, concurrence and QFI against β or θ.
    DimerSweep(DimerSweepArgs),
    /// Thermal dimer QFI over (sin2θ, J/k_BT).
    ThermalHeatmap(HeatmapArgs),
    /// Pristine chain eigenstate QFI.
    Chain(ExcitonArgs),
    /// Pristine ring eigenstate QFI.
    Ring(ExcitonArgs),
    /// Maximize the QFI over local generators.
    Optimize(OptimizeArgs),
    /// Disorder-averaged thermal QFI sweep.
    Disorder(DisorderArgs),
    /// Simulated linear spectrum of the dimer and its QFI sum rules.
    Spectrum(SpectrumArgs),
    /// QFI per site from a molar extinction spectrum.
    Ingest(IngestArgs),
}

#[derive(Args, Debug, Clone)]
pub struct DimerInput {
    /// Named dimer parameter set.
    #[arg(long, value_enum)]
    pub preset: Option<DimerPreset>,
    #[arg(long, allow_hyphen_values = true)]
    pub omega_a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub omega_b: Option<f64>,
    /// Coupling J in cm⁻¹ (J > 0: J-aggregate).
    #[arg(long, allow_hyphen_values = true)]
    pub j: Option<f64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum DimerPreset {
    Fmo,
}

#[derive(Args, Debug)]
pub struct DimerSweepArgs {
    #[command(flatten)]
    pub dimer: DimerInput,
    /// Largest inverse temperature, cm.
    #[arg(long, default_value_t = 0.05)]
    pub beta_max: f64,
    #[arg(long, default_value_t = 100)]
    pub points: usize,
    /// Sweep the mixing angle over [0, π/2] instead of β.
    #[arg(long)]
    pub theta_sweep: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum GridSize {
    Small,
    Medium,
    Large,
}

impl GridSize {
    pub fn dims(self) -> (usize, usize) {
        match self {
            GridSize::Small => (20, 21),
            GridSize::Medium => (50, 51),
            GridSize::Large => (200, 201),
        }
    }
}

#[derive(Args, Debug)]
pub struct HeatmapArgs {
    #[arg(long, value_enum, default_value = "medium")]
    pub grid: GridSize,
    /// Largest J/k_BT on the temperature axis.
    #[arg(long, default_value_t = 3.0)]
    pub x_max: f64,
    /// Half the exciton splitting, cm⁻¹.
    #[arg(long, default_value_t = 100.0)]
    pub half_splitting: f64,
}

#[derive(Args, Debug)]
pub struct ExcitonArgs {
    /// Number of sites.
    #[arg(long, conflicts_with = "n_max")]
    pub n: Option<usize>,
    /// Sweep N from 2 to this value.
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Eigenstate labels (chain: 1..=N, ring: 0..N).
    #[arg(long, value_delimiter = ',')]
    pub k: Vec<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OptTopology {
    Chain,
    Ring,
}

#[derive(Args, Debug)]
pub struct OptimizeArgs {
    #[command(flatten)]
    pub dimer: DimerInput,
    /// Aggregate TOML (keys of the aggregate config).
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub topology: Option<OptTopology>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Eigenstate label: chain 1..=N, ring 0..N, otherwise 1-based in ascending energy.
    #[arg(long)]
    pub k: Option<usize>,
    /// Optimize the thermal state at this temperature instead of an eigenstate.
    #[arg(long)]
    pub temperature: Option<f64>,
    #[arg(long, default_value_t = 32)]
    pub starts: usize,
    #[arg(long, default_value_t = 2000)]
    pub max_iters: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepPreset {
    Pic,
    Fig5,
}

#[derive(Args, Debug)]
pub struct DisorderArgs {
    /// Sweep TOML.
    #[arg(long, conflicts_with = "preset")]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub preset: Option<SweepPreset>,
    /// Override the number of realizations per cell.
    #[arg(long)]
    pub realizations: Option<u64>,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    /// Spectrum TOML; flags below override its entries.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub dimer: DimerInput,
    #[arg(long, value_enum)]
    pub initial: Option<Initial>,
    /// Reorganization energy λ, cm⁻¹.
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Drude cutoff γ, cm⁻¹.
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub temperature: Option<f64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Initial {
    Ground,
    Lower,
}

#[derive(Args, Debug)]
pub struct IngestArgs {
    /// CSV with columns omega_cm1,eps_L_per_mol_cm,band.
    #[arg(long)]
    pub input: PathBuf,
    /// Single-site transition dipole, C·cm.
    #[arg(long)]
    pub mu_c_cm: f64,
    #[arg(long)]
    pub n_sites: usize,
}
