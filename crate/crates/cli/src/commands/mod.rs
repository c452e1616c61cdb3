pub mod dimer;
pub mod disorder;
pub mod excitons;
pub mod spectra;

use anyhow::Result;
use exciton_qfi::dimer::DimerParams;
use serde_json::json;

use crate::args::DimerInput;
use crate::{presets, usage};

/// Dimer from `--preset` or the three explicit flags.
pub fn dimer_params(input: &DimerInput) -> Result<DimerParams> {
    if let Some(p) = input.preset {
        if input.omega_a.is_some() || input.omega_b.is_some() || input.j.is_some() {
            return usage("--preset cannot be combined with --omega-a/--omega-b/--j");
        }
        let cfg = presets::dimer(p)?;
        let spec = cfg.aggregate_spec()?;
        let j = spec.coupling_scale().expect("dimer preset has a scalar coupling");
        return Ok(DimerParams::new(spec.site_energies[0], spec.site_energies[1], j));
    }
    match (input.omega_a, input.omega_b, input.j) {
        (Some(a), Some(b), Some(j)) => Ok(DimerParams::new(a, b, j)),
        _ => usage("give --preset or all of --omega-a, --omega-b, --j"),
    }
}

pub fn dimer_json(p: &DimerParams) -> serde_json::Value {
    json!({ "omega_a_cm1": p.omega_a, "omega_b_cm1": p.omega_b, "j_cm1": p.j })
}
