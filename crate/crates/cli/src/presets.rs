use anyhow::{Context, Result};
use exciton_qfi::aggregate::AggregateConfig;
use exciton_qfi::disorder::SweepConfig;

use crate::args::{DimerPreset, SweepPreset};

pub const FMO: &str = include_str!("../presets/fmo.toml");
pub const PIC: &str = include_str!("../presets/pic.toml");
pub const FIG5: &str = include_str!("../presets/fig5.toml");

pub fn dimer(preset: DimerPreset) -> Result<AggregateConfig> {
    let src = match preset {
        DimerPreset::Fmo => FMO,
    };
    Ok(AggregateConfig::from_toml(src)?)
}

pub fn sweep(preset: SweepPreset) -> Result<SweepConfig> {
    let src = match preset {
        SweepPreset::Pic => PIC,
        SweepPreset::Fig5 => FIG5,
    };
    toml::from_str(src).context("parsing built-in sweep preset")
}
