use nalgebra::Complex;
use rustfft::FftPlanner;
use serde::Serialize;

use super::correlation::{Band, Correlation, Transition};
use crate::error::{Error, Result};

pub const DECAY_TOL: f64 = 1e-6;
pub const EDGE_TOL: f64 = 1e-4;

/// Two-sided spectrum on the uniform grid `ω_k = k·dω`, k = −n/2 .. n/2−1.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumTrace {
    pub omega: Vec<f64>,
    pub intensity: Vec<f64>,
    pub bands: Vec<Option<Band>>,
    pub d_omega: f64,
    pub dt: f64,
    /// Number of one-sided time samples the transform was built from.
    pub n_time: usize,
}

impl SpectrumTrace {
    pub fn peak(&self) -> f64 {
        self.intensity.iter().fold(0.0, |a, &b| a.max(b.abs()))
    }

    /// Largest edge intensity relative to the peak.
    pub fn edge_ratio(&self) -> f64 {
        let n = self.intensity.len();
        let edge = self.intensity[0].abs().max(self.intensity[n - 1].abs());
        edge / self.peak()
    }

    pub fn band_weight(&self, band: Band) -> f64 {
        self.intensity
            .iter()
            .zip(&self.bands)
            .filter(|(_, b)| **b == Some(band))
            .map(|(i, _)| i)
            .sum::<f64>()
            * self.d_omega
    }
}

fn check_samples(samples: &[Complex<f64>], dt: f64) -> Result<()> {
    if samples.len() < 2 {
        return Err(Error::Validation("need at least two correlation samples".into()));
    }
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::Validation(format!("time step {dt} must be positive")));
    }
    let c0 = samples[0].norm();
    let end = samples[samples.len() - 1].norm();
    if end > DECAY_TOL * c0 {
        return Err(Error::Window(format!(
            "|C(t_end)|/|C(0)| = {:.3e} exceeds {DECAY_TOL:e}; extend the time window",
            end / c0
        )));
    }
    Ok(())
}

/// Inverse FFT of the Hermitian extension `x_{−j} = x̄_j`; the shared endpoint gets the
/// trapezoid half-weight from each side. Returns `dt·Re X_k` in natural FFT order.
fn hermitian_transform(samples: &[Complex<f64>], dt: f64) -> Vec<f64> {
    let half = samples.len() - 1;
    let n = 2 * half;
    let mut buf = vec![Complex::new(0.0, 0.0); n];
    buf[0] = Complex::new(samples[0].re, 0.0);
    for j in 1..half {
        buf[j] = samples[j];
        buf[n - j] = samples[j].conj();
    }
    buf[half] = Complex::new(samples[half].re, 0.0);
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    buf.into_iter().map(|x| dt * x.re).collect()
}

fn label(omega: f64, transitions: &[Transition]) -> Option<Band> {
    transitions
        .iter()
        .min_by(|a, b| (a.omega - omega).abs().total_cmp(&(b.omega - omega).abs()))
        .map(|t| t.band)
}

/// `I(ω) = ∫ e^{iωt} C(t) dt` over the full time line.
pub fn spectrum_from_samples(samples: &[Complex<f64>], dt: f64, transitions: &[Transition]) -> Result<SpectrumTrace> {
    check_samples(samples, dt)?;
    let raw = hermitian_transform(samples, dt);
    let n = raw.len();
    let d_omega = 2.0 * std::f64::consts::PI / (n as f64 * dt);
    let mut omega = Vec::with_capacity(n);
    let mut intensity = Vec::with_capacity(n);
    // fftshift: negative frequencies first
    for k in 0..n {
        let src = (k + n / 2) % n;
        let signed = k as i64 - (n / 2) as i64;
        omega.push(signed as f64 * d_omega);
        intensity.push(raw[src]);
    }
    let bands = omega.iter().map(|&w| label(w, transitions)).collect();
    Ok(SpectrumTrace {
        omega,
        intensity,
        bands,
        d_omega,
        dt,
        n_time: samples.len(),
    })
}

pub fn spectrum(corr: &Correlation) -> Result<SpectrumTrace> {
    spectrum_from_samples(&corr.samples, corr.dt, &corr.transitions)
}

/// `(2/π)∫I dω`.
pub fn qfi_from_spectrum(trace: &SpectrumTrace) -> Result<f64> {
    if trace.intensity.is_empty() {
        return Err(Error::Validation("empty spectrum".into()));
    }
    let ratio = trace.edge_ratio();
    if ratio > EDGE_TOL {
        return Err(Error::Integration(format!(
            "edge intensity is {ratio:.3e} of the peak; bands are truncated, refine dt"
        )));
    }
    let total: f64 = trace.intensity.iter().sum();
    Ok(2.0 / std::f64::consts::PI * trace.d_omega * total)
}

/// `(4/π)∫₀^∞ S dω` with S the transform of Re C.
pub fn qfi_from_symmetric_correlation(samples: &[Complex<f64>], dt: f64) -> Result<f64> {
    check_samples(samples, dt)?;
    let re: Vec<Complex<f64>> = samples.iter().map(|c| Complex::new(c.re, 0.0)).collect();
    let s = hermitian_transform(&re, dt);
    let n = s.len();
    let half = n / 2;
    let d_omega = 2.0 * std::f64::consts::PI / (n as f64 * dt);
    let peak = s.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
    if s[half].abs() > EDGE_TOL * peak {
        return Err(Error::Integration("symmetrized spectrum is truncated at the Nyquist edge".into()));
    }
    let interior: f64 = s[1..half].iter().sum();
    let sum = 0.5 * s[0] + interior + 0.5 * s[half];
    Ok(4.0 / std::f64::consts::PI * d_omega * sum)
}
