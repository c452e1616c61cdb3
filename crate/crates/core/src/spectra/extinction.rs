//! Molar extinction → QFI per site.
//!
//! Unit bookkeeping, kept in one place:
//! - ε is per mole of *sites*, in L·mol⁻¹·cm⁻¹ (1 L·mol⁻¹·cm⁻¹ = 0.1 m²·mol⁻¹);
//! - μ_i is in C·cm (= 10⁻² C·m);
//! - ∫ε/ω dω is independent of the frequency unit, so ω stays in cm⁻¹;
//! - ε₀ in F/m, c in m/s, ħ in J·s.
//!
//! Collecting the powers of ten gives the prefactor `3·ln10·10³·ε₀·c·ħ/(π·N_A·μ_i²)`.

use std::io::Read;

use serde::{Deserialize, Serialize};

use super::correlation::Band;
use crate::error::{Error, Result};
use crate::units::{AVOGADRO, EPSILON_0, HBAR, SPEED_OF_LIGHT};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtinctionRow {
    pub omega_cm1: f64,
    pub eps_l_per_mol_cm: f64,
    pub band: Band,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtinctionTrace {
    pub rows: Vec<ExtinctionRow>,
    /// Single-site transition dipole, C·cm.
    pub mu_site_c_cm: f64,
    pub n_sites: usize,
}

#[derive(Deserialize)]
struct CsvRow {
    omega_cm1: f64,
    #[serde(rename = "eps_L_per_mol_cm")]
    eps: f64,
    band: String,
}

impl ExtinctionTrace {
    /// Reads `omega_cm1,eps_L_per_mol_cm,band` rows.
    pub fn from_csv<R: Read>(reader: R, mu_site_c_cm: f64, n_sites: usize) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let mut rows = Vec::new();
        for (line, rec) in rdr.deserialize::<CsvRow>().enumerate() {
            let rec = rec.map_err(|e| Error::Validation(format!("extinction CSV row {}: {e}", line + 1)))?;
            if rec.band.is_empty() {
                return Err(Error::Validation(format!("extinction CSV row {} has no band label", line + 1)));
            }
            rows.push(ExtinctionRow {
                omega_cm1: rec.omega_cm1,
                eps_l_per_mol_cm: rec.eps,
                band: Band::parse(&rec.band)?,
            });
        }
        let trace = ExtinctionTrace {
            rows,
            mu_site_c_cm,
            n_sites,
        };
        trace.validate()?;
        Ok(trace)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mu_site_c_cm > 0.0) || !self.mu_site_c_cm.is_finite() {
            return Err(Error::Domain(format!("site dipole {} C·cm must be positive", self.mu_site_c_cm)));
        }
        if self.n_sites == 0 {
            return Err(Error::Validation("n_sites must be positive".into()));
        }
        if self.rows.len() < 2 {
            return Err(Error::Validation("extinction trace needs at least two rows".into()));
        }
        for w in self.rows.windows(2) {
            if !(w[1].omega_cm1 > w[0].omega_cm1) {
                return Err(Error::Validation(format!(
                    "frequencies must increase strictly ({} then {})",
                    w[0].omega_cm1, w[1].omega_cm1
                )));
            }
        }
        for r in &self.rows {
            if !(r.eps_l_per_mol_cm >= 0.0) || !r.eps_l_per_mol_cm.is_finite() {
                return Err(Error::Validation(format!("ε = {} at ω = {} is not ≥ 0", r.eps_l_per_mol_cm, r.omega_cm1)));
            }
            if r.band != Band::GroundStateBleach && !(r.omega_cm1 > 0.0) {
                return Err(Error::Validation(format!("{} row at ω = {} ≤ 0", r.band.as_str(), r.omega_cm1)));
            }
        }
        Ok(())
    }
}

/// `3·ln10·10³·ε₀·c·ħ/(π·N_A)`; divide by μ_i² in (C·cm)².
pub fn extinction_prefactor() -> f64 {
    3.0 * std::f64::consts::LN_10 * 1e3 * EPSILON_0 * SPEED_OF_LIGHT * HBAR / (std::f64::consts::PI * AVOGADRO)
}

/// F_Q/N from the SE and ESA bands; GSB rows are skipped. Trapezoid over adjacent rows that
/// both belong to an included band.
pub fn ingest_extinction(trace: &ExtinctionTrace) -> Result<f64> {
    trace.validate()?;
    let included = |r: &ExtinctionRow| r.band != Band::GroundStateBleach;
    if !trace.rows.iter().any(included) {
        return Err(Error::Validation("no SE or ESA rows to integrate".into()));
    }
    let integral: f64 = trace
        .rows
        .windows(2)
        .filter(|w| included(&w[0]) && included(&w[1]))
        .map(|w| {
            let f0 = w[0].eps_l_per_mol_cm / w[0].omega_cm1;
            let f1 = w[1].eps_l_per_mol_cm / w[1].omega_cm1;
            0.5 * (f0 + f1) * (w[1].omega_cm1 - w[0].omega_cm1)
        })
        .sum();
    Ok(extinction_prefactor() / (trace.mu_site_c_cm * trace.mu_site_c_cm) * integral)
}
