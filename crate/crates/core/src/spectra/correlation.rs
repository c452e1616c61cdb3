use nalgebra::Complex;
use serde::{Deserialize, Serialize};

use super::bath::{lineshape_g, SpectralDensity};
use crate::dimer::{mixing_angle, DimerParams};
use crate::error::{Error, Result};
use crate::witness::{apply_generator, embed_first_excitation, Generator};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Band {
    #[serde(rename = "SE")]
    StimulatedEmission,
    #[serde(rename = "ESA")]
    ExcitedStateAbsorption,
    #[serde(rename = "GSB")]
    GroundStateBleach,
}

impl Band {
    pub fn as_str(&self) -> &'static str {
        match self {
            Band::StimulatedEmission => "SE",
            Band::ExcitedStateAbsorption => "ESA",
            Band::GroundStateBleach => "GSB",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "SE" => Ok(Band::StimulatedEmission),
            "ESA" => Ok(Band::ExcitedStateAbsorption),
            "GSB" => Ok(Band::GroundStateBleach),
            other => Err(Error::Validation(format!("unknown band label {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum InitialState {
    Ground,
    LowerExciton,
    UpperExciton,
}

/// One term `w·e^{−iΩt}·(dephasing)` of the dipole autocorrelation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Transition {
    pub band: Band,
    pub weight: f64,
    /// Signed transition frequency `E_final − E_initial`, cm⁻¹.
    pub omega: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Correlation {
    pub dt: f64,
    /// `C(j·dt)` for j = 0..len.
    pub samples: Vec<Complex<f64>>,
    pub transitions: Vec<Transition>,
}

/// Uniform time grid `t_j = j·dt`, j = 0..=n_half.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    pub dt: f64,
    pub n_half: usize,
}

impl TimeGrid {
    pub fn times(&self) -> Vec<f64> {
        (0..=self.n_half).map(|j| j as f64 * self.dt).collect()
    }
}

/// Dipole-field transitions out of a dimer state. Only ε₀ and ε₁ are supported.
pub fn dimer_transitions(p: &DimerParams, initial: InitialState) -> Result<Vec<Transition>> {
    let theta = mixing_angle(p)?;
    let (c, s) = (theta.cos(), theta.sin());
    let (e1, e2) = p.energies();
    let e3 = p.omega_a + p.omega_b;
    let plus = (c + s).powi(2) / 4.0;
    let minus = (c - s).powi(2) / 4.0;
    match initial {
        InitialState::Ground => Ok(vec![
            Transition { band: Band::GroundStateBleach, weight: plus, omega: e1 },
            Transition { band: Band::GroundStateBleach, weight: minus, omega: e2 },
        ]),
        InitialState::LowerExciton => Ok(vec![
            Transition { band: Band::StimulatedEmission, weight: plus, omega: -e1 },
            Transition { band: Band::ExcitedStateAbsorption, weight: plus, omega: e3 - e1 },
        ]),
        InitialState::UpperExciton => Err(Error::Capability(
            "dipole correlation is implemented for the ground and lower exciton states only".into(),
        )),
    }
}

/// Refuses states with a nonzero dipole expectation value.
fn check_zero_mean(p: &DimerParams, initial: InitialState) -> Result<()> {
    let theta = mixing_angle(p)?;
    let psi = match initial {
        InitialState::Ground => {
            let mut v = vec![Complex::new(0.0, 0.0); 4];
            v[0] = Complex::new(1.0, 0.0);
            v
        }
        _ => embed_first_excitation(&[Complex::new(theta.cos(), 0.0), Complex::new(theta.sin(), 0.0)])?,
    };
    let o = apply_generator(&Generator::dipole_field(2), &psi)?;
    let mean: Complex<f64> = psi.iter().zip(&o).map(|(a, b)| a.conj() * b).sum();
    if mean.norm() > 1e-12 {
        return Err(Error::Domain(format!("probed state has ⟨μ⟩ = {mean}")));
    }
    Ok(())
}

/// `C(t) = ⟨ψ|O(t)O|ψ⟩` for the dipole-field generator of a dimer, each line dressed by the
/// second-cumulant factor `exp(±iλt − g(t))`.
///
/// Ω is the vertical gap. Every band is pulled towards ω = 0 by λ, so for slow baths emission
/// sits 2λ below absorption and for fast baths both collapse onto the 0-0 line at Ω − λ.
pub fn dipole_correlation(
    p: &DimerParams,
    initial: InitialState,
    sd: &SpectralDensity,
    beta: f64,
    grid: &TimeGrid,
) -> Result<Correlation> {
    let transitions = dimer_transitions(p, initial)?;
    check_zero_mean(p, initial)?;
    let times = grid.times();
    let g = lineshape_g(sd, beta, &times)?;
    let lam = sd.lambda;
    let samples = times
        .iter()
        .zip(&g)
        .map(|(&t, &gt)| {
            transitions
                .iter()
                .map(|tr| {
                    let phase = Complex::new(0.0, -(tr.omega - tr.omega.signum() * lam) * t);
                    (phase - gt).exp() * tr.weight
                })
                .sum()
        })
        .collect();
    Ok(Correlation {
        dt: grid.dt,
        samples,
        transitions,
    })
}

/// Time grid resolving every band plus `margin` cm⁻¹ on either side and running until
/// `e^{−Re g}` has dropped below 1e-7.
pub fn suggest_time_grid(
    p: &DimerParams,
    initial: InitialState,
    sd: &SpectralDensity,
    beta: f64,
) -> Result<TimeGrid> {
    let transitions = dimer_transitions(p, initial)?;
    let top = transitions.iter().map(|t| t.omega.abs()).fold(0.0, f64::max) + sd.lambda;
    let width = (2.0 * sd.lambda / beta).sqrt() + sd.lambda + sd.gamma;
    let dt = std::f64::consts::PI / (top + 40.0 * width);
    // march outwards in coarse steps until the envelope is gone
    let mut t = dt;
    loop {
        let g = lineshape_g(sd, beta, &[t])?[0];
        if g.re > 16.2 {
            break;
        }
        t *= 1.25;
        if t > 1e4 {
            return Err(Error::Window("correlation does not decay; bath too weak".into()));
        }
    }
    Ok(TimeGrid {
        dt,
        n_half: (t / dt).ceil() as usize + 1,
    })
}
