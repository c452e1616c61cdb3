use anyhow::Result;
use exciton_qfi::dimer::*;
use exciton_qfi::units::kelvin_from_beta;
use exciton_qfi::witness::{dense_oracle_qfi, embed_first_excitation, DenseState, Generator};
use nalgebra::Complex;
use serde_json::json;

use super::{dimer_json, dimer_params};
use crate::args::{DimerSweepArgs, HeatmapArgs};
use crate::manifest::{CommandOutput, OracleSummary};
use crate::table::{Cell, Table};
use crate::usage;

/// Generator attaining the maximal dimer QFI: in-plane, parallel for J ≥ 0.
fn aligned_generator(j: f64) -> Generator {
    if j >= 0.0 {
        Generator::dipole_field(2)
    } else {
        Generator::new(vec![[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0]]).expect("unit vectors")
    }
}

struct ThermalRow {
    purity_ab: f64,
    purity_a: f64,
    concurrence: f64,
    fq_dipole: f64,
    fq_max: f64,
}

fn thermal_row(p: &DimerParams, beta: f64) -> Result<ThermalRow> {
    let (purity_ab, purity_a) = purity_thermal(p, beta)?;
    Ok(ThermalRow {
        purity_ab,
        purity_a,
        concurrence: concurrence_thermal(p, beta)?,
        fq_dipole: thermal_qfi_dipole(p, beta)?,
        fq_max: thermal_qfi_max(p, beta)?,
    })
}

/// Dense density-matrix values of (dipole, max) QFI.
fn thermal_oracle(p: &DimerParams, beta: f64) -> Result<(f64, f64)> {
    let rho = thermal_density(p, beta)?;
    let d = dense_oracle_qfi(DenseState::Density(&rho), &Generator::dipole_field(2))?;
    let m = dense_oracle_qfi(DenseState::Density(&rho), &aligned_generator(p.j))?;
    Ok((d, m))
}

pub fn sweep(a: &DimerSweepArgs, oracle: bool) -> Result<CommandOutput> {
    if a.points < 2 {
        return usage("--points must be at least 2");
    }
    let mut check = OracleSummary::new();
    let (table, config) = if a.theta_sweep {
        let mut head = vec!["theta", "sin2theta", "fq_lower", "fq_upper", "purity_ab", "purity_a", "concurrence"];
        if oracle {
            head.extend(["fq_lower_oracle", "fq_upper_oracle", "oracle_dev"]);
        }
        let mut t = Table::new(&head);
        for i in 0..a.points {
            let theta = std::f64::consts::FRAC_PI_2 * i as f64 / (a.points - 1) as f64;
            // unit half-splitting dimer with this mixing angle
            let q = DimerParams::new(0.0, 2.0 * (2.0 * theta).cos(), (2.0 * theta).sin());
            let s2t = sin2theta(&q)?;
            let lo = pure_state_qfi_dipole(&q, DimerState::Lower)?;
            let up = pure_state_qfi_dipole(&q, DimerState::Upper)?;
            let pur = purity_pure(theta);
            let mut row: Vec<Cell> = vec![theta.into(), s2t.into(), lo.into(), up.into(), 1.0.into(), pur.into(), s2t.abs().into()];
            if oracle {
                let th = mixing_angle(&q)?;
                let (c, s) = (th.cos(), th.sin());
                let g = Generator::dipole_field(2);
                let lower = embed_first_excitation(&[Complex::new(c, 0.0), Complex::new(s, 0.0)])?;
                let upper = embed_first_excitation(&[Complex::new(-s, 0.0), Complex::new(c, 0.0)])?;
                let ol = dense_oracle_qfi(DenseState::Pure(&lower), &g)?;
                let ou = dense_oracle_qfi(DenseState::Pure(&upper), &g)?;
                let dev = check.record(lo, ol).max(check.record(up, ou));
                row.extend([ol.into(), ou.into(), dev.into()]);
            }
            t.push(row);
        }
        (t, json!({ "mode": "theta", "points": a.points }))
    } else {
        let p = dimer_params(&a.dimer)?;
        if !(a.beta_max > 0.0) || !a.beta_max.is_finite() {
            return usage("--beta-max must be positive and finite");
        }
        let mut head = vec!["beta_cm", "temperature_k", "purity_ab", "purity_a", "concurrence", "fq_dipole", "fq_max"];
        if oracle {
            head.extend(["fq_dipole_oracle", "fq_max_oracle", "oracle_dev"]);
        }
        let mut t = Table::new(&head);
        for i in 0..a.points {
            let beta = a.beta_max * i as f64 / (a.points - 1) as f64;
            let r = thermal_row(&p, beta)?;
            let mut row: Vec<Cell> = vec![
                beta.into(),
                kelvin_from_beta(beta).into(),
                r.purity_ab.into(),
                r.purity_a.into(),
                r.concurrence.into(),
                r.fq_dipole.into(),
                r.fq_max.into(),
            ];
            if oracle {
                let (od, om) = thermal_oracle(&p, beta)?;
                let dev = check.record(r.fq_dipole, od).max(check.record(r.fq_max, om));
                row.extend([od.into(), om.into(), dev.into()]);
            }
            t.push(row);
        }
        (
            t,
            json!({ "mode": "beta", "dimer": dimer_json(&p), "beta_max_cm": a.beta_max, "points": a.points }),
        )
    };
    Ok(CommandOutput {
        config,
        files: vec![("dimer-sweep.csv".into(), table.to_bytes())],
        oracle: oracle.then_some(check),
    })
}

pub fn heatmap(a: &HeatmapArgs, oracle: bool) -> Result<CommandOutput> {
    if !(a.x_max > 0.0) || !(a.half_splitting > 0.0) {
        return usage("--x-max and --half-splitting must be positive");
    }
    let (ns, nx) = a.grid.dims();
    let mut head = vec!["sin2theta", "j_over_kbt", "beta_cm", "purity_ab", "purity_a", "concurrence", "fq_dipole", "fq_max"];
    if oracle {
        head.extend(["fq_dipole_oracle", "fq_max_oracle", "oracle_dev"]);
    }
    let mut t = Table::new(&head);
    let mut check = OracleSummary::new();
    let h = a.half_splitting;
    for i in 0..ns {
        // cell midpoints keep sin2θ = 0 (J = 0) off the grid and the grid symmetric
        let s = -1.0 + (2 * i + 1) as f64 / ns as f64;
        let c = (1.0 - s * s).max(0.0).sqrt();
        let p = DimerParams::new(-h * c, h * c, h * s);
        for k in 0..nx {
            let x = a.x_max * k as f64 / (nx - 1) as f64;
            let beta = x / p.j.abs();
            let r = thermal_row(&p, beta)?;
            let mut row: Vec<Cell> = vec![
                s.into(),
                x.into(),
                beta.into(),
                r.purity_ab.into(),
                r.purity_a.into(),
                r.concurrence.into(),
                r.fq_dipole.into(),
                r.fq_max.into(),
            ];
            if oracle {
                let (od, om) = thermal_oracle(&p, beta)?;
                let dev = check.record(r.fq_dipole, od).max(check.record(r.fq_max, om));
                row.extend([od.into(), om.into(), dev.into()]);
            }
            t.push(row);
        }
    }
    Ok(CommandOutput {
        config: json!({ "grid": [ns, nx], "x_max": a.x_max, "half_splitting_cm1": h }),
        files: vec![("thermal-heatmap.csv".into(), t.to_bytes())],
        oracle: oracle.then_some(check),
    })
}
