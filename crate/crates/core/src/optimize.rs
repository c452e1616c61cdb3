//! Multi-start Nelder–Mead maximization of the QFI over local generators.
//!
//! Each Bloch vector is `(sinθ cosφ, sinθ sinφ, cosθ)`; φ₁ is pinned to 0 because a
//! common rotation about ẑ leaves the QFI of subspace states unchanged. Start 0 sits
//! on the dipole-field generator, the others are drawn uniformly on the sphere.

use nalgebra::{Complex, DMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::witness::{qfi_mixed, qfi_pure, Generator};

pub const MAX_OPT_SITES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub n_starts: usize,
    pub max_iters: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            n_starts: 32,
            max_iters: 2000,
            tol: 1e-10,
            seed: 0,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_starts == 0 || self.max_iters == 0 || !(self.tol > 0.0) {
            return Err(Error::Config("optimizer needs n_starts, max_iters and tol > 0".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug)]
pub enum Target<'a> {
    Pure(&'a [Complex<f64>]),
    Mixed {
        populations: &'a [f64],
        states: &'a DMatrix<Complex<f64>>,
    },
}

impl Target<'_> {
    fn n_sites(&self) -> usize {
        match self {
            Target::Pure(c) => c.len(),
            Target::Mixed { states, .. } => states.nrows(),
        }
    }

    pub fn qfi(&self, gen: &Generator<f64>) -> Result<f64> {
        match *self {
            Target::Pure(c) => qfi_pure(c, gen),
            Target::Mixed { populations, states } => qfi_mixed(populations, states, gen),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StartResult {
    pub index: usize,
    pub f_q: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Optimum {
    pub f_max: f64,
    pub f_dipole: f64,
    pub generator: Generator<f64>,
    pub best_start: usize,
    pub starts_converged: usize,
    /// No start met the tolerance; `f_max` is the best value seen.
    pub warning: bool,
    pub starts: Vec<StartResult>,
}

fn angles_to_generator(x: &[f64], n: usize) -> Generator<f64> {
    let theta = &x[..n];
    let mut phi = Vec::with_capacity(n);
    phi.push(0.0);
    phi.extend_from_slice(&x[n..]);
    Generator::from_angles(theta, &phi).expect("angles always give unit vectors")
}

struct Outcome {
    x: Vec<f64>,
    f: f64,
    iterations: usize,
    converged: bool,
}

/// Minimizes `f` from `x0`; restarts the simplex at the incumbent until a restart no longer helps.
fn nelder_mead(f: &dyn Fn(&[f64]) -> f64, x0: Vec<f64>, step: f64, tol: f64, max_iters: usize) -> Outcome {
    let mut best_x = x0;
    let mut best_f = f(&best_x);
    let mut iterations = 0;
    let mut converged = false;
    let mut scale = step;
    while iterations < max_iters {
        let (x, fx, used, ok) = nm_run(f, &best_x, scale, tol, max_iters - iterations);
        iterations += used;
        let gained = best_f - fx;
        if fx <= best_f {
            best_x = x;
            best_f = fx;
        }
        if ok && gained <= tol {
            converged = true;
            break;
        }
        scale = (scale * 0.5).max(1e-3);
    }
    Outcome {
        x: best_x,
        f: best_f,
        iterations,
        converged,
    }
}

fn nm_run(f: &dyn Fn(&[f64]) -> f64, x0: &[f64], step: f64, tol: f64, budget: usize) -> (Vec<f64>, f64, usize, bool) {
    let d = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(d + 1);
    simplex.push((x0.to_vec(), f(x0)));
    for i in 0..d {
        let mut x = x0.to_vec();
        x[i] += step;
        let v = f(&x);
        simplex.push((x, v));
    }
    let mut it = 0;
    loop {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (lo, hi) = (simplex[0].1, simplex[d].1);
        if hi - lo <= tol {
            return (simplex[0].0.clone(), lo, it, true);
        }
        if it >= budget {
            return (simplex[0].0.clone(), lo, it, false);
        }
        it += 1;
        let mut centroid = vec![0.0; d];
        for (x, _) in &simplex[..d] {
            for (c, v) in centroid.iter_mut().zip(x) {
                *c += v / d as f64;
            }
        }
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[d].0)
                .map(|(c, w)| c + t * (w - c))
                .collect()
        };
        let xr = along(-1.0);
        let fr = f(&xr);
        if fr < simplex[0].1 {
            let xe = along(-2.0);
            let fe = f(&xe);
            simplex[d] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[d - 1].1 {
            simplex[d] = (xr, fr);
        } else {
            let (xc, fc) = if fr < simplex[d].1 {
                let x = along(-0.5);
                let v = f(&x);
                (x, v)
            } else {
                let x = along(0.5);
                let v = f(&x);
                (x, v)
            };
            if fc < simplex[d].1.min(fr) {
                simplex[d] = (xc, fc);
            } else {
                let best = simplex[0].0.clone();
                for (x, v) in simplex.iter_mut().skip(1) {
                    for (xi, bi) in x.iter_mut().zip(&best) {
                        *xi = bi + 0.5 * (*xi - bi);
                    }
                    *v = f(x);
                }
            }
        }
    }
}

fn start_point(index: usize, n: usize, seed: u64) -> Vec<f64> {
    let mut x = vec![std::f64::consts::FRAC_PI_2; n];
    x.extend(std::iter::repeat_n(0.0, n - 1));
    if index == 0 {
        return x;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    for t in x.iter_mut().take(n) {
        *t = rng.random_range(-1.0f64..1.0).acos();
    }
    for p in x.iter_mut().skip(n) {
        *p = rng.random_range(0.0..std::f64::consts::TAU);
    }
    x
}

pub fn maximize_qfi(target: Target<'_>, config: &OptimizerConfig) -> Result<Optimum> {
    config.validate()?;
    let n = target.n_sites();
    if n > MAX_OPT_SITES {
        return Err(Error::Capability(format!("optimizer limited to N <= {MAX_OPT_SITES}, got {n}")));
    }
    if n == 0 {
        return Err(Error::Validation("empty state".into()));
    }
    let f_dipole = target.qfi(&Generator::dipole_field(n))?;

    let objective = |x: &[f64]| -> f64 {
        // inputs were validated by the dipole-field evaluation above
        -target.qfi(&angles_to_generator(x, n)).unwrap_or(f64::NEG_INFINITY)
    };
    let runs: Vec<(StartResult, Vec<f64>)> = (0..config.n_starts)
        .into_par_iter()
        .map(|i| {
            let o = nelder_mead(&objective, start_point(i, n, config.seed), 0.3, config.tol, config.max_iters);
            (
                StartResult {
                    index: i,
                    f_q: -o.f,
                    iterations: o.iterations,
                    converged: o.converged,
                },
                o.x,
            )
        })
        .collect();

    let mut best = 0;
    for (i, (r, _)) in runs.iter().enumerate() {
        if r.f_q > runs[best].0.f_q {
            best = i;
        }
    }
    let starts_converged = runs.iter().filter(|(r, _)| r.converged).count();
    Ok(Optimum {
        f_max: runs[best].0.f_q,
        f_dipole,
        generator: angles_to_generator(&runs[best].1, n),
        best_start: best,
        starts_converged,
        warning: starts_converged == 0,
        starts: runs.into_iter().map(|(r, _)| r).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_bowl() {
        let f = |x: &[f64]| (x[0] - 1.0).powi(2) + 3.0 * (x[1] + 0.5).powi(2);
        let o = nelder_mead(&f, vec![0.0, 0.0], 0.3, 1e-14, 5000);
        assert!(o.converged);
        assert!((o.x[0] - 1.0).abs() < 1e-5 && (o.x[1] + 0.5).abs() < 1e-5);
    }

    #[test]
    fn warm_start_is_dipole_field() {
        let g = angles_to_generator(&start_point(0, 4, 9), 4);
        for n in g.bloch() {
            assert!((n[0] - 1.0).abs() < 1e-15 && n[1].abs() < 1e-15 && n[2].abs() < 1e-15);
        }
        assert_ne!(start_point(1, 4, 9), start_point(2, 4, 9));
        assert_eq!(start_point(3, 4, 9), start_point(3, 4, 9));
    }

    #[test]
    fn bell_state_optimum() {
        let r = Complex::new(0.5f64.sqrt(), 0.0);
        let c = [r, r];
        let o = maximize_qfi(Target::Pure(&c), &OptimizerConfig { n_starts: 4, ..Default::default() }).unwrap();
        assert!((o.f_max - 4.0).abs() < 1e-8);
        assert!(o.f_max >= o.f_dipole);
        assert_eq!(o.starts.len(), 4);
    }

    #[test]
    fn bad_config() {
        let c = [Complex::new(1.0, 0.0), Complex::new(0.0, 0.0)];
        let cfg = OptimizerConfig { n_starts: 0, ..Default::default() };
        assert!(matches!(maximize_qfi(Target::Pure(&c), &cfg), Err(Error::Config(_))));
    }
}
