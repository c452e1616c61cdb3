use anyhow::{Context, Result};
use exciton_qfi::dimer::{mixing_angle, DimerParams};
use exciton_qfi::spectra::{self, *};
use exciton_qfi::units::beta_from_kelvin;
use exciton_qfi::witness::{classify_depth, dense_oracle_qfi, embed_first_excitation, DenseState, Generator};
use nalgebra::Complex;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{dimer_json, dimer_params};
use crate::args::{DimerInput, DimerPreset, IngestArgs, Initial, SpectrumArgs};
use crate::manifest::{CommandOutput, OracleSummary};
use crate::table::Table;
use crate::usage;

/// TOML form of a spectrum run; every key is optional and overridden by flags.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumConfig {
    pub preset: Option<String>,
    pub omega_a_cm1: Option<f64>,
    pub omega_b_cm1: Option<f64>,
    pub j_cm1: Option<f64>,
    pub initial: Option<Initial>,
    pub lambda_cm1: Option<f64>,
    pub gamma_cm1: Option<f64>,
    pub temperature_k: Option<f64>,
}

fn resolve_dimer(flags: &DimerInput, cfg: &SpectrumConfig) -> Result<DimerParams> {
    let any_flag = flags.preset.is_some() || flags.omega_a.is_some() || flags.omega_b.is_some() || flags.j.is_some();
    if any_flag {
        return dimer_params(flags);
    }
    let preset = match cfg.preset.as_deref() {
        None => None,
        Some("fmo") => Some(DimerPreset::Fmo),
        Some(other) => return usage(format!("unknown dimer preset {other:?}")),
    };
    dimer_params(&DimerInput {
        preset,
        omega_a: cfg.omega_a_cm1,
        omega_b: cfg.omega_b_cm1,
        j: cfg.j_cm1,
    })
}

pub fn spectrum(a: &SpectrumArgs, oracle: bool) -> Result<CommandOutput> {
    let cfg: SpectrumConfig = match &a.config {
        Some(path) => {
            let src = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            toml::from_str(&src).with_context(|| format!("parsing {}", path.display()))?
        }
        None => SpectrumConfig::default(),
    };
    let p = resolve_dimer(&a.dimer, &cfg)?;
    let initial = a.initial.or(cfg.initial).unwrap_or(Initial::Lower);
    let lambda = a.lambda.or(cfg.lambda_cm1).unwrap_or(35.0);
    let gamma = a.gamma.or(cfg.gamma_cm1).unwrap_or(50.0);
    let temperature = a.temperature.or(cfg.temperature_k).unwrap_or(300.0);
    if !(temperature > 0.0) || !temperature.is_finite() {
        return usage("--temperature must be positive and finite");
    }
    let sd = SpectralDensity::drude_lorentz(lambda, gamma)?;
    let beta = beta_from_kelvin(temperature);
    let state = match initial {
        Initial::Ground => InitialState::Ground,
        Initial::Lower => InitialState::LowerExciton,
    };
    let grid = suggest_time_grid(&p, state, &sd, beta)?;
    let corr = dipole_correlation(&p, state, &sd, beta, &grid)?;
    let trace = spectra::spectrum(&corr)?;
    let f_spec = qfi_from_spectrum(&trace)?;
    let f_sym = qfi_from_symmetric_correlation(&corr.samples, corr.dt)?;
    let four_c0 = 4.0 * corr.samples[0].re;

    let mut t = Table::new(&["omega_cm1", "intensity", "band"]);
    for ((w, i), b) in trace.omega.iter().zip(&trace.intensity).zip(&trace.bands) {
        t.push(vec![(*w).into(), (*i).into(), b.map_or("", |b| b.as_str()).into()]);
    }
    let mut check = OracleSummary::new();
    let mut oracle_json = serde_json::Value::Null;
    if oracle {
        let psi = match state {
            InitialState::Ground => {
                let mut v = vec![Complex::new(0.0, 0.0); 4];
                v[0] = Complex::new(1.0, 0.0);
                v
            }
            _ => {
                let th = mixing_angle(&p)?;
                embed_first_excitation(&[Complex::new(th.cos(), 0.0), Complex::new(th.sin(), 0.0)])?
            }
        };
        let dense = dense_oracle_qfi(DenseState::Pure(&psi), &Generator::dipole_field(2))?;
        let dev = check.record(four_c0, dense);
        oracle_json = json!({ "four_c0_oracle": dense, "deviation": dev });
    }
    let summary = json!({
        "f_q_spectrum": f_spec,
        "f_q_symmetric": f_sym,
        "four_c0": four_c0,
        "dt_cm": corr.dt,
        "n_time": trace.n_time,
        "d_omega_cm1": trace.d_omega,
        "edge_ratio": trace.edge_ratio(),
        "band_weights": {
            "SE": trace.band_weight(Band::StimulatedEmission),
            "ESA": trace.band_weight(Band::ExcitedStateAbsorption),
            "GSB": trace.band_weight(Band::GroundStateBleach),
        },
        "transitions": corr.transitions,
        "oracle": oracle_json,
    });
    let mut js = serde_json::to_vec_pretty(&summary)?;
    js.push(b'\n');
    Ok(CommandOutput {
        config: json!({
            "dimer": dimer_json(&p),
            "initial": initial,
            "lambda_cm1": lambda,
            "gamma_cm1": gamma,
            "temperature_k": temperature,
        }),
        files: vec![("spectrum.csv".into(), t.to_bytes()), ("spectrum.json".into(), js)],
        oracle: oracle.then_some(check),
    })
}

pub fn ingest(a: &IngestArgs, oracle: bool) -> Result<CommandOutput> {
    let file = std::fs::File::open(&a.input).with_context(|| format!("opening {}", a.input.display()))?;
    let trace = ExtinctionTrace::from_csv(file, a.mu_c_cm, a.n_sites)?;
    let per_site = ingest_extinction(&trace)?;
    let f = per_site * a.n_sites as f64;
    let d = classify_depth(f, a.n_sites);
    let result = json!({
        "f_q_per_n": per_site,
        "f_q": f,
        "depth": d.depth,
        "inconclusive": d.inconclusive,
        "rows": trace.rows.len(),
        "rows_integrated": trace.rows.iter().filter(|r| r.band != Band::GroundStateBleach).count(),
    });
    let mut js = serde_json::to_vec_pretty(&result)?;
    js.push(b'\n');
    let input = std::fs::read(&a.input)?;
    Ok(CommandOutput {
        config: json!({
            "input": a.input.display().to_string(),
            "input_sha256": crate::manifest::sha256_hex(&input),
            "mu_c_cm": a.mu_c_cm,
            "n_sites": a.n_sites,
        }),
        files: vec![("ingest.json".into(), js)],
        oracle: oracle.then(OracleSummary::new),
    })
}
