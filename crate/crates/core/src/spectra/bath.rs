use std::f64::consts::PI;

use gauss_quad::legendre::GaussLegendre;
use nalgebra::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Drude–Lorentz spectral density `ρ(ω) = (2λ/π)·γ/(ω(ω² + γ²))`, normalized so `∫ωρ dω = λ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralDensity {
    /// Reorganization energy λ, cm⁻¹.
    pub lambda: f64,
    /// Cutoff γ, cm⁻¹.
    pub gamma: f64,
}

const GL_ORDER: usize = 10;

impl SpectralDensity {
    pub fn drude_lorentz(lambda: f64, gamma: f64) -> Result<Self> {
        let sd = Self { lambda, gamma };
        sd.validate()?;
        Ok(sd)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lambda > 0.0 && self.gamma > 0.0) || !self.lambda.is_finite() || !self.gamma.is_finite() {
            return Err(Error::Validation(format!(
                "spectral density needs finite λ, γ > 0 (got {}, {})",
                self.lambda, self.gamma
            )));
        }
        Ok(())
    }

    pub fn density(&self, omega: f64) -> f64 {
        2.0 * self.lambda / PI * self.gamma / (omega * (omega * omega + self.gamma * self.gamma))
    }

    /// `∫_W^∞ ρ dω`.
    fn tail_mass(&self, w: f64) -> f64 {
        self.lambda / (PI * self.gamma) * (self.gamma * self.gamma / (w * w)).ln_1p()
    }
}

/// `g(t) = ∫₀^∞ ρ(ω)[coth(βω/2)(1 − cos ωt) + i sin ωt] dω` on the given times.
///
/// Composite Gauss–Legendre on [0, W] with panels no wider than a quarter period of
/// cos ωt, plus the tail beyond W to leading order in 1/(Wt) (coth → 1 there).
pub fn lineshape_g(sd: &SpectralDensity, beta: f64, times: &[f64]) -> Result<Vec<Complex<f64>>> {
    sd.validate()?;
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::Domain(format!("lineshape needs finite β > 0, got {beta}")));
    }
    let rule = GaussLegendre::new(GL_ORDER).map_err(|e| Error::Numerical(format!("{e:?}")))?;
    let nodes = rule.as_node_weight_pairs();
    times
        .par_iter()
        .map(|&t| {
            let g = g_at(sd, beta, t.abs(), nodes);
            if !(g.re.is_finite() && g.im.is_finite()) {
                return Err(Error::Numerical(format!("lineshape quadrature not finite at t = {t}")));
            }
            // g(−t) = g(t)*
            Ok(if t < 0.0 { g.conj() } else { g })
        })
        .collect()
}

fn g_at(sd: &SpectralDensity, beta: f64, t: f64, nodes: &[(f64, f64)]) -> Complex<f64> {
    if t == 0.0 {
        return Complex::new(0.0, 0.0);
    }
    let w = (50.0 * sd.gamma).max(30.0 / beta).max(200.0 / t);
    let quarter = 0.5 * PI / t;
    let (mut re, mut im) = (0.0, 0.0);
    let mut a = 0.0;
    while a < w {
        let h = (sd.gamma / 8.0).max(a / 4.0).min(quarter).min(w - a);
        let (mid, half) = (a + 0.5 * h, 0.5 * h);
        let (mut pr, mut pi) = (0.0, 0.0);
        for &(x, wt) in nodes {
            let om = mid + half * x;
            let rho = sd.density(om);
            let s = (0.5 * om * t).sin();
            // 1 − cos ωt = 2 sin²(ωt/2) avoids cancellation at small ωt
            pr += wt * rho * 2.0 * s * s / (0.5 * beta * om).tanh();
            pi += wt * rho * (om * t).sin();
        }
        re += half * pr;
        im += half * pi;
        a += h;
    }
    // tail: cos/sin average out to O(ρ(W)/t); keep that leading boundary term
    let rho_w = sd.density(w);
    re += sd.tail_mass(w) + rho_w * (w * t).sin() / t;
    im += rho_w * (w * t).cos() / t;
    Complex::new(re, im)
}

/// `Im g(t) = (λ/γ)(1 − e^{−γt})`.
pub fn drude_lorentz_im_g(sd: &SpectralDensity, t: f64) -> f64 {
    sd.lambda / sd.gamma * (1.0 - (-sd.gamma * t).exp())
}

/// `Re g(t)` from the Matsubara expansion, summed until terms drop below `1e-15·|Re g|`.
///
/// `(λ/γ)cot(βγ/2)(e^{−γt} + γt − 1) + (4λγ/β) Σ_k (e^{−ν_k t} + ν_k t − 1)/(ν_k(ν_k² − γ²))`,
/// `ν_k = 2πk/β`. Diverges when βγ/2π is an integer.
pub fn drude_lorentz_re_g_matsubara(sd: &SpectralDensity, beta: f64, t: f64) -> f64 {
    let (l, g) = (sd.lambda, sd.gamma);
    let mut sum = l / g / (0.5 * beta * g).tan() * ((-g * t).exp() + g * t - 1.0);
    for k in 1..2_000_000u64 {
        let nu = 2.0 * PI * k as f64 / beta;
        let term = 4.0 * l * g / beta * ((-nu * t).exp() + nu * t - 1.0) / (nu * (nu * nu - g * g));
        sum += term;
        if k > 10 && term.abs() < 1e-15 * sum.abs() {
            break;
        }
    }
    sum
}

/// High-temperature limit `(2λ/(βγ))(t − (1 − e^{−γt})/γ)`.
pub fn drude_lorentz_re_g_high_t(sd: &SpectralDensity, beta: f64, t: f64) -> f64 {
    2.0 * sd.lambda / (beta * sd.gamma) * (t - (1.0 - (-sd.gamma * t).exp()) / sd.gamma)
}
