use anyhow::{Context, Result};
use exciton_qfi::aggregate::{
    analytic_chain_state, analytic_ring_state, build_hamiltonian, diagonalize, thermal_state, transition_dipole_chain,
    AggregateConfig,
};
use exciton_qfi::optimize::{maximize_qfi, OptimizerConfig, Target};
use exciton_qfi::scalar::to_complex;
use exciton_qfi::witness::{
    chain_qfi_closed_form, classify_depth, dense_oracle_qfi, embed_first_excitation, ring_qfi_closed_form, DenseState,
    Generator, QfiReport, MAX_DENSE_SITES,
};
use nalgebra::{Complex, DMatrix};
use serde_json::json;

use super::{dimer_json, dimer_params};
use crate::args::{ExcitonArgs, OptTopology, OptimizeArgs};
use crate::manifest::{CommandOutput, OracleSummary};
use crate::table::{Cell, Table};
use crate::usage;

#[derive(Clone, Copy, PartialEq)]
enum Lattice {
    Chain,
    Ring,
}

fn sizes(a: &ExcitonArgs) -> Result<Vec<usize>> {
    match (a.n, a.n_max) {
        (Some(n), None) if n >= 2 => Ok(vec![n]),
        (None, Some(m)) if m >= 2 => Ok((2..=m).collect()),
        _ => usage("give --n N or --n-max N with N >= 2"),
    }
}

fn state(lattice: Lattice, n: usize, k: usize) -> Result<Vec<Complex<f64>>> {
    Ok(match lattice {
        Lattice::Chain => to_complex(&analytic_chain_state::<f64>(n, k)?),
        Lattice::Ring => analytic_ring_state::<f64>(n, k)?,
    })
}

fn eigenstate_table(a: &ExcitonArgs, lattice: Lattice, oracle: bool) -> Result<CommandOutput> {
    let ns = sizes(a)?;
    let ks = if a.k.is_empty() {
        vec![if lattice == Lattice::Chain { 1 } else { 0 }]
    } else {
        a.k.clone()
    };
    let mut head = vec!["n_sites", "k", "f_q", "f_q_per_n", "depth", "inconclusive"];
    if lattice == Lattice::Chain {
        head.push("dipole_strength");
    }
    if oracle {
        head.extend(["f_q_oracle", "oracle_dev"]);
    }
    let mut t = Table::new(&head);
    let mut check = OracleSummary::new();
    for &n in &ns {
        for &k in &ks {
            let in_range = match lattice {
                Lattice::Chain => (1..=n).contains(&k),
                Lattice::Ring => k < n,
            };
            if !in_range {
                continue;
            }
            let f: f64 = match lattice {
                Lattice::Chain => chain_qfi_closed_form(n, k)?,
                Lattice::Ring => ring_qfi_closed_form(n, k)?,
            };
            let d = classify_depth(f, n);
            let mut row: Vec<Cell> = vec![n.into(), k.into(), f.into(), (f / n as f64).into(), d.depth.into(), d.inconclusive.into()];
            if lattice == Lattice::Chain {
                row.push(transition_dipole_chain::<f64>(n, k)?.into());
            }
            if oracle {
                if n <= MAX_DENSE_SITES {
                    let psi = embed_first_excitation(&state(lattice, n, k)?)?;
                    let o = dense_oracle_qfi(DenseState::Pure(&psi), &Generator::dipole_field(n))?;
                    let dev = check.record(f, o);
                    row.extend([o.into(), dev.into()]);
                } else {
                    row.extend([Cell::S(String::new()), Cell::S(String::new())]);
                }
            }
            t.push(row);
        }
    }
    if t.is_empty() {
        return usage("no (N, k) pair in range");
    }
    let name = if lattice == Lattice::Chain { "chain" } else { "ring" };
    Ok(CommandOutput {
        config: json!({ "n_sites": ns, "k": ks }),
        files: vec![(format!("{name}.csv"), t.to_bytes())],
        oracle: oracle.then_some(check),
    })
}

pub fn chain(a: &ExcitonArgs, oracle: bool) -> Result<CommandOutput> {
    eigenstate_table(a, Lattice::Chain, oracle)
}

pub fn ring(a: &ExcitonArgs, oracle: bool) -> Result<CommandOutput> {
    eigenstate_table(a, Lattice::Ring, oracle)
}

enum Prepared {
    Pure(Vec<Complex<f64>>),
    Mixed(Vec<f64>, DMatrix<Complex<f64>>),
}

fn prepare(a: &OptimizeArgs) -> Result<(Prepared, serde_json::Value)> {
    let has_dimer = a.dimer.preset.is_some() || a.dimer.omega_a.is_some() || a.dimer.omega_b.is_some() || a.dimer.j.is_some();
    let sources = [has_dimer, a.config.is_some(), a.topology.is_some()].iter().filter(|&&x| x).count();
    if sources != 1 {
        return usage("give exactly one of --preset/--omega-a.., --config, --topology");
    }
    if let Some(top) = a.topology {
        let n = match a.n {
            Some(n) if n >= 2 => n,
            _ => return usage("--topology needs --n N with N >= 2"),
        };
        let lattice = if top == OptTopology::Chain { Lattice::Chain } else { Lattice::Ring };
        if a.temperature.is_some() {
            return usage("--temperature needs --preset or --config");
        }
        let k = a.k.unwrap_or(if lattice == Lattice::Chain { 1 } else { 0 });
        let name = if lattice == Lattice::Chain { "chain" } else { "ring" };
        return Ok((Prepared::Pure(state(lattice, n, k)?), json!({ "topology": name, "n_sites": n, "k": k })));
    }
    let (spec, source) = if let Some(path) = &a.config {
        let src = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let cfg = AggregateConfig::from_toml(&src)?;
        let value = serde_json::to_value(&cfg)?;
        (cfg.aggregate_spec()?, value)
    } else {
        let p = dimer_params(&a.dimer)?;
        (exciton_qfi::aggregate::AggregateSpec::dimer(p.omega_a, p.omega_b, p.j), dimer_json(&p))
    };
    if spec.topology == exciton_qfi::aggregate::Topology::DisorderedChain {
        return usage("optimize takes pristine aggregates; use `disorder` for ensembles");
    }
    let basis = diagonalize(&build_hamiltonian(&spec, None)?)?;
    match (a.temperature, a.k) {
        (Some(_), Some(_)) => usage("--temperature and --k are exclusive"),
        (Some(t), None) => {
            let s = thermal_state(&basis, t)?;
            Ok((
                Prepared::Mixed(s.populations().to_vec(), basis.states().clone()),
                json!({ "aggregate": source, "temperature_k": t }),
            ))
        }
        (None, k) => {
            let k = k.unwrap_or(1);
            if k == 0 || k > basis.len() {
                return usage(format!("--k must lie in 1..={}", basis.len()));
            }
            Ok((Prepared::Pure(basis.state(k - 1)), json!({ "aggregate": source, "k": k })))
        }
    }
}

pub fn optimize(a: &OptimizeArgs, seed: u64, oracle: bool) -> Result<CommandOutput> {
    let (prepared, state_json) = prepare(a)?;
    let config = OptimizerConfig {
        n_starts: a.starts,
        max_iters: a.max_iters,
        seed,
        ..Default::default()
    };
    let target = match &prepared {
        Prepared::Pure(c) => Target::Pure(c),
        Prepared::Mixed(p, s) => Target::Mixed { populations: p, states: s },
    };
    let opt = maximize_qfi(target, &config)?;
    let n = opt.generator.n_sites();
    let report = QfiReport::new(opt.f_max, n)?;
    let mut check = OracleSummary::new();
    let mut oracle_json = serde_json::Value::Null;
    if oracle && n <= MAX_DENSE_SITES {
        let dense = match &prepared {
            Prepared::Pure(c) => dense_oracle_qfi(DenseState::Pure(&embed_first_excitation(c)?), &opt.generator)?,
            Prepared::Mixed(p, s) => dense_oracle_qfi(DenseState::Ensemble { populations: p, states: s }, &opt.generator)?,
        };
        let dev = check.record(opt.f_max, dense);
        oracle_json = json!({ "f_max_oracle": dense, "deviation": dev });
    }
    let result = json!({
        "f_max": opt.f_max,
        "f_dipole": opt.f_dipole,
        "report": report,
        "generator": opt.generator.bloch(),
        "max_abs_nz": opt.generator.max_abs_z(),
        "best_start": opt.best_start,
        "starts_converged": opt.starts_converged,
        "warning": opt.warning,
        "starts": opt.starts,
        "oracle": oracle_json,
    });
    let mut bytes = serde_json::to_vec_pretty(&result)?;
    bytes.push(b'\n');
    Ok(CommandOutput {
        config: json!({ "state": state_json, "optimizer": config }),
        files: vec![("optimize.json".into(), bytes)],
        oracle: oracle.then_some(check),
    })
}
