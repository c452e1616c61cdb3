//! Acceptance suite: prints one PASS/FAIL line per primary criterion, then fails if any failed.
//! Run with `cargo test -p exciton-qfi-cli --test acceptance -- --nocapture`.

use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use exciton_qfi::aggregate::{
    analytic_chain_state, analytic_ring_state, boltzmann_populations, chain_energy, CouplingRange,
};
use exciton_qfi::dimer::*;
use exciton_qfi::disorder::{run_sweep, DisorderMode, SweepConfig};
use exciton_qfi::optimize::{maximize_qfi, OptimizerConfig, Target};
use exciton_qfi::scalar::to_complex;
use exciton_qfi::spectra::*;
use exciton_qfi::units::{beta_from_kelvin, AVOGADRO, EPSILON_0, HBAR, SPEED_OF_LIGHT};
use exciton_qfi::witness::*;
use nalgebra::Complex;

const ORACLE_TOL: f64 = 1e-9;
const ORACLE_BUDGET: Duration = Duration::from_secs(60);
const DIMER_TOL: f64 = 1e-10;
const SYMMETRY_TOL: f64 = 1e-12;
const CONCURRENCE_IDENTITY_TOL: f64 = 1e-10;
const OPT_TOL: f64 = 1e-6;
const NZ_TOL: f64 = 1e-4;
const FIG4_BUDGET: Duration = Duration::from_secs(300);
const ANCHOR_TOL: f64 = 1e-10;
const FIG5_BUDGET: Duration = Duration::from_secs(600);
const SUM_RULE_TOL: f64 = 5e-3;
const PATH_AGREEMENT_TOL: f64 = 1e-6;
const ROUND_TRIP_TOL: f64 = 1e-2;
const LINEARITY_TOL: f64 = 1e-12;

struct Outcome {
    name: &'static str,
    failures: Vec<String>,
    detail: String,
}

impl Outcome {
    fn new(name: &'static str) -> Self {
        Self { name, failures: Vec::new(), detail: String::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

fn closed_form_oracle() -> Outcome {
    let mut o = Outcome::new("closed form vs dense oracle, N <= 10");
    let t = Instant::now();
    let mut worst = 0.0f64;
    for n in 2..=10 {
        let g = Generator::dipole_field(n);
        for k in 1..=n {
            let psi = embed_first_excitation(&to_complex(&analytic_chain_state::<f64>(n, k).unwrap())).unwrap();
            let d = (chain_qfi_closed_form::<f64>(n, k).unwrap() - dense_oracle_qfi(DenseState::Pure(&psi), &g).unwrap()).abs();
            worst = worst.max(d);
            o.check(d <= ORACLE_TOL, || format!("chain N={n} k={k} off by {d:e}"));
        }
        for k in 0..n {
            let psi = embed_first_excitation(&analytic_ring_state::<f64>(n, k).unwrap()).unwrap();
            let f = ring_qfi_closed_form::<f64>(n, k).unwrap();
            let d = (f - dense_oracle_qfi(DenseState::Pure(&psi), &g).unwrap()).abs();
            worst = worst.max(d);
            o.check(d <= ORACLE_TOL, || format!("ring N={n} k={k} off by {d:e}"));
            if k == 0 {
                o.check((f - (3 * n - 2) as f64).abs() <= ORACLE_TOL, || format!("ring N={n} k=0 gives {f}"));
            }
        }
    }
    let el = t.elapsed();
    o.check(el <= ORACLE_BUDGET, || format!("took {el:?}"));
    o.detail = format!("max deviation {worst:.2e}, {el:.2?}");
    o
}

fn fmo() -> DimerParams {
    DimerParams::new(12328.0, 12472.0, 70.7)
}

fn dimer_suite() -> Outcome {
    let mut o = Outcome::new("dimer suite");
    let bell = DimerParams::new(0.0, 0.0, 1.0);
    let f = pure_state_qfi_dipole(&bell, DimerState::Lower).unwrap();
    o.check(f == 4.0, || format!("F(θ=π/4) = {f}"));
    for p in [DimerParams::new(0.0, 1.0, 0.0), DimerParams::new(1.0, 0.0, 0.0)] {
        let f = pure_state_qfi_dipole(&p, DimerState::Lower).unwrap();
        o.check(f == 2.0, || format!("F(θ∈{{0,π/2}}) = {f}"));
    }
    let p = fmo();
    let th = mixing_angle(&p).unwrap();
    let psi = embed_first_excitation(&[Complex::new(th.cos(), 0.0), Complex::new(th.sin(), 0.0)]).unwrap();
    let f1 = pure_state_qfi_dipole(&p, DimerState::Lower).unwrap();
    let d1 = dense_oracle_qfi(DenseState::Pure(&psi), &Generator::dipole_field(2)).unwrap();
    o.check((f1 - d1).abs() <= DIMER_TOL, || format!("F(ε₁) {f1} vs dense {d1}"));
    o.check((f1 - 3.4013).abs() < 5e-5, || format!("F(ε₁) = {f1}"));
    let beta = beta_from_kelvin(300.0);
    let ft = thermal_qfi_dipole(&p, beta).unwrap();
    let rho = thermal_density(&p, beta).unwrap();
    let dt = dense_oracle_qfi(DenseState::Density(&rho), &Generator::dipole_field(2)).unwrap();
    o.check((ft - dt).abs() <= DIMER_TOL, || format!("F(300 K) {ft} vs dense {dt}"));
    o.check((ft - 2.6297).abs() < 5e-5, || format!("F(300 K) = {ft}"));
    o.detail = format!("F(ε₁) = {f1:.6}, F(300 K) = {ft:.6}");
    o
}

fn fig3() -> Outcome {
    let mut o = Outcome::new("thermal dimer map properties");
    let (ns, nx) = (50, 51);
    let mut cells = 0;
    for i in 0..ns {
        let s = -1.0 + (2 * i + 1) as f64 / ns as f64;
        let c = (1.0 - s * s).sqrt();
        let p = DimerParams::new(-100.0 * c, 100.0 * c, 100.0 * s);
        let mirror = DimerParams::new(p.omega_a, p.omega_b, -p.j);
        for k in 0..nx {
            let beta = 3.0 * k as f64 / (nx - 1) as f64 / p.j.abs();
            cells += 1;
            if p.j < 0.0 {
                let f = thermal_qfi_dipole(&p, beta).unwrap();
                o.check(f <= 2.0 + SYMMETRY_TOL, || format!("J<0 cell s={s} witnesses {f}"));
            }
            let (a, b) = (thermal_qfi_max(&p, beta).unwrap(), thermal_qfi_max(&mirror, beta).unwrap());
            o.check((a - b).abs() <= SYMMETRY_TOL, || format!("max QFI asymmetric at s={s}: {a} vs {b}"));
            let cc = concurrence_thermal(&p, beta).unwrap();
            o.check((a - 2.0 - 2.0 * cc).abs() <= CONCURRENCE_IDENTITY_TOL, || format!("F_max ≠ 2+2C at s={s}"));
        }
    }
    o.detail = format!("{cells} cells");
    o
}

fn fig4() -> Outcome {
    let mut o = Outcome::new("chain and ring band-edge properties");
    let t = Instant::now();
    for n in 2..=200 {
        let two = npartite_bound(2, n).unwrap().bound as f64;
        let f1: f64 = chain_qfi_closed_form(n, 1).unwrap();
        if n >= 3 {
            o.check(f1 > two + DEPTH_TOL, || format!("N={n}: k=1 ({f1}) not above {two}"));
        }
        for k in [3usize, 5] {
            if k <= n {
                let fk: f64 = chain_qfi_closed_form(n, k).unwrap();
                o.check(fk <= two, || format!("N={n}: k={k} ({fk}) above {two}"));
            }
        }
        let ceiling = (3 * n - 2) as f64;
        if n == 2 {
            o.check((f1 - ceiling).abs() < 1e-12, || "N=2 misses 3N-2".into());
        } else {
            o.check(f1 < ceiling, || format!("N={n}: {f1} reaches 3N-2"));
        }
    }
    let cfg = OptimizerConfig { n_starts: 16, seed: 1, ..Default::default() };
    for n in 5..=8 {
        let c = analytic_ring_state::<f64>(n, 0).unwrap();
        let opt = maximize_qfi(Target::Pure(&c), &cfg).unwrap();
        let d = (opt.f_max - (3 * n - 2) as f64).abs();
        o.check(d <= OPT_TOL, || format!("ring N={n} optimum off by {d:e}"));
        let z = opt.generator.max_abs_z();
        o.check(z <= NZ_TOL, || format!("ring N={n} max|n_z| = {z}"));
    }
    let c = to_complex(&analytic_chain_state::<f64>(7, 1).unwrap());
    let opt = maximize_qfi(Target::Pure(&c), &cfg).unwrap();
    let d = (opt.f_max - chain_qfi_closed_form::<f64>(7, 1).unwrap()).abs();
    o.check(d <= OPT_TOL, || format!("chain N=7 optimum off by {d:e}"));
    let el = t.elapsed();
    o.check(el <= FIG4_BUDGET, || format!("took {el:?}"));
    o.detail = format!("{el:.2?}");
    o
}

fn fig5() -> Outcome {
    let mut o = Outcome::new("disorder trends at N=20, M=2000");
    let t = Instant::now();
    let base = SweepConfig {
        n_sites: 20,
        site_energy_cm1: 0.0,
        jprime_cm1: 600.0,
        lattice_a: 1.0,
        coupling_range: CouplingRange::Full,
        mode: DisorderMode::Diagonal,
        sigma_grid: vec![0.1, 0.2, 0.3, 0.4, 0.5, 0.6],
        j_over_kbt: vec![50.0],
        realizations: 2000,
        seed: 1,
    };
    let trend = run_sweep(&base).unwrap();
    for w in trend.cells.windows(2) {
        o.check(w[1].mean_fq_per_n <= w[0].mean_fq_per_n + 2.0 * w[1].stderr, || {
            format!("mean rises from σ={} to σ={}", w[0].sigma_over_j, w[1].sigma_over_j)
        });
    }
    // zero-disorder anchors against the analytic nearest-neighbour chain
    let xs = vec![0.0, 1.0, 5.0, 50.0];
    let anchor = run_sweep(&SweepConfig {
        coupling_range: CouplingRange::NearestNeighbor,
        sigma_grid: vec![0.0],
        j_over_kbt: xs.clone(),
        ..base.clone()
    })
    .unwrap();
    for (cell, &x) in anchor.cells.iter().zip(&xs) {
        let e: Vec<f64> = (1..=20).map(|k| chain_energy(20, k, 0.0, 600.0).unwrap()).collect();
        let p = boltzmann_populations(&e, x / 600.0).unwrap();
        let exact: f64 = (1..=20).map(|k| p[k - 1] * chain_qfi_closed_form::<f64>(20, k).unwrap()).sum::<f64>() / 20.0;
        let d = (cell.mean_fq_per_n - exact).abs();
        o.check(d <= ANCHOR_TOL && cell.stderr == 0.0, || format!("zero-disorder x={x} off by {d:e}"));
    }
    let pic = run_sweep(&SweepConfig { sigma_grid: vec![0.128], ..base }).unwrap();
    let c = &pic.cells[0];
    o.check(c.depth == 3, || format!("PIC-Cl conservative depth {}", c.depth));
    let el = t.elapsed();
    o.check(el <= FIG5_BUDGET, || format!("took {el:?}"));
    o.detail = format!(
        "F/N {:.4} → {:.4} over σ/J 0.1..0.6; PIC-Cl F/N = {:.4} ± {:.4}, depth {}; {el:.2?}",
        trend.cells[0].mean_fq_per_n,
        trend.cells[5].mean_fq_per_n,
        c.mean_fq_per_n,
        c.stderr,
        c.depth
    );
    o
}

fn sum_rules() -> Outcome {
    let mut o = Outcome::new("spectroscopic sum rules");
    let baths = [(35.0, 50.0), (70.0, 50.0), (35.0, 100.0), (20.0, 30.0), (100.0, 150.0)];
    let beta = beta_from_kelvin(300.0);
    let mut summary = Vec::new();
    for (state, expected) in [
        (InitialState::LowerExciton, pure_state_qfi_dipole(&fmo(), DimerState::Lower).unwrap()),
        (InitialState::Ground, 2.0),
    ] {
        let mut values = Vec::new();
        for (l, g) in baths {
            let sd = SpectralDensity::drude_lorentz(l, g).unwrap();
            let grid = suggest_time_grid(&fmo(), state, &sd, beta).unwrap();
            let c = dipole_correlation(&fmo(), state, &sd, beta, &grid).unwrap();
            let f = qfi_from_spectrum(&spectrum(&c).unwrap()).unwrap();
            let fs = qfi_from_symmetric_correlation(&c.samples, c.dt).unwrap();
            let c0 = 4.0 * c.samples[0].re;
            o.check((f - c0).abs() / c0 <= SUM_RULE_TOL, || format!("{state:?} λ={l} γ={g}: {f} vs 4C(0) {c0}"));
            o.check((f - fs).abs() / f <= PATH_AGREEMENT_TOL, || format!("{state:?} λ={l} γ={g}: paths {f} vs {fs}"));
            o.check((f - expected).abs() / expected <= SUM_RULE_TOL, || format!("{state:?}: {f} vs {expected}"));
            values.push(f);
        }
        let (lo, hi) = values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
        o.check((hi - lo) / lo <= SUM_RULE_TOL, || format!("{state:?} varies {lo}..{hi} across baths"));
        summary.push(format!("{state:?} {lo:.6}..{hi:.6}"));
    }
    o.detail = summary.join(", ");
    o
}

/// Gaussian bands from the golden-rule cross section, in L·mol⁻¹·cm⁻¹.
fn synthetic_trace(mu_c_cm: f64, eps_scale: f64) -> ExtinctionTrace {
    let lines = [
        (16_000.0, 60.0, 1.6, Band::StimulatedEmission),
        (17_200.0, 80.0, 0.9, Band::ExcitedStateAbsorption),
        (19_500.0, 60.0, 3.0, Band::GroundStateBleach),
    ];
    let mu = mu_c_cm * 1e-2;
    let to_rad = 2.0 * std::f64::consts::PI * SPEED_OF_LIGHT * 100.0;
    let rows = (0..14_001)
        .map(|i| {
            let w = 14_000.0 + 0.5 * i as f64;
            let mut eps = 0.0;
            let mut band = Band::GroundStateBleach;
            let mut best = f64::INFINITY;
            for &(w0, width, strength, b) in &lines {
                let area = std::f64::consts::PI * w0 * to_rad * strength * mu * mu / (3.0 * EPSILON_0 * HBAR * SPEED_OF_LIGHT);
                let s = width * to_rad;
                let x = (w - w0) * to_rad;
                let sigma = area * (-(x * x) / (2.0 * s * s)).exp() / (s * (2.0 * std::f64::consts::PI).sqrt());
                eps += AVOGADRO * sigma / std::f64::consts::LN_10 * 10.0;
                if (w - w0).abs() < best {
                    best = (w - w0).abs();
                    band = b;
                }
            }
            ExtinctionRow { omega_cm1: w, eps_l_per_mol_cm: eps * eps_scale, band }
        })
        .collect();
    ExtinctionTrace { rows, mu_site_c_cm: mu_c_cm, n_sites: 20 }
}

fn ingestion() -> Outcome {
    let mut o = Outcome::new("extinction ingestion round trip");
    let mu = 3.3356e-28;
    let f = ingest_extinction(&synthetic_trace(mu, 1.0)).unwrap();
    o.check((f - 2.5).abs() / 2.5 <= ROUND_TRIP_TOL, || format!("recovered F/N = {f}, built 2.5"));
    let f2 = ingest_extinction(&synthetic_trace(mu, 2.0)).unwrap();
    o.check((f2 - 2.0 * f).abs() <= LINEARITY_TOL * f, || format!("ε×2 gives {f2} vs {}", 2.0 * f));
    let mut t = synthetic_trace(mu, 1.0);
    t.mu_site_c_cm *= 2.0;
    let fq = ingest_extinction(&t).unwrap();
    o.check((fq - f / 4.0).abs() <= LINEARITY_TOL * f, || format!("μ×2 gives {fq} vs {}", f / 4.0));
    o.detail = format!("F/N = {f:.5} (built 2.5)");
    o
}

fn run_bin(out: &Path, args: &[&str]) -> bool {
    Command::new(env!("CARGO_BIN_EXE_exqfi"))
        .arg("--out")
        .arg(out)
        .args(args)
        .output()
        .map(|o| o.status.success())
        .unwrap_or(false)
}

fn determinism() -> Outcome {
    let mut o = Outcome::new("seeded commands are byte-identical on rerun");
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.toml");
    fs::write(
        &cfg,
        "n_sites = 20\njprime_cm1 = 600.0\nmode = \"diagonal\"\nsigma_grid = [0.128, 0.3]\nj_over_kbt = [1.0, 50.0]\nrealizations = 200\nseed = 0\n",
    )
    .unwrap();
    let runs: [(&str, Vec<&str>); 2] = [
        ("disorder.csv", vec!["--seed", "7", "disorder", "--config", cfg.to_str().unwrap()]),
        ("optimize.json", vec!["--seed", "7", "optimize", "--topology", "chain", "--n", "6", "--starts", "6"]),
    ];
    for (file, args) in &runs {
        let a = dir.path().join("a");
        let b = dir.path().join("b");
        let ok = run_bin(&a, args) && run_bin(&b, args);
        o.check(ok, || format!("{args:?} failed"));
        if ok {
            let same = fs::read(a.join(file)).unwrap() == fs::read(b.join(file)).unwrap();
            o.check(same, || format!("{file} differs between runs"));
        }
    }
    o.detail = "disorder CSV and optimize JSON; workspace builds Rust crates only".into();
    o
}

#[test]
fn acceptance() {
    let outcomes = [
        closed_form_oracle(),
        dimer_suite(),
        fig3(),
        fig4(),
        fig5(),
        sum_rules(),
        ingestion(),
        determinism(),
    ];
    let mut failed = 0;
    for o in &outcomes {
        if o.failures.is_empty() {
            println!("PASS  {} — {}", o.name, o.detail);
        } else {
            failed += 1;
            println!("FAIL  {} — {}; {}", o.name, o.detail, o.failures.join("; "));
        }
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
