//! Brute-force QFI on the full 2^N qubit space, used as an independent check.
//!
//! Site m is bit `1 << m` of the basis index; a set bit means the site is excited.
//! Nothing here uses the first-excitation algebra of the subspace routines.

use nalgebra::{Complex, DMatrix, SymmetricEigen};

use super::generator::Generator;
use crate::error::{Error, Result};

pub const MAX_DENSE_SITES: usize = 12;
/// Density matrices are eigendecomposed in full, so the guard is tighter.
pub const MAX_DENSITY_SITES: usize = 8;

type C = Complex<f64>;

pub enum DenseState<'a> {
    /// State vector of length 2^N.
    Pure(&'a [C]),
    /// `Σ p_λ |λ⟩⟨λ|` with orthonormal first-excitation columns (N rows), lifted to 2^N.
    Ensemble {
        populations: &'a [f64],
        states: &'a DMatrix<C>,
    },
    /// Full 2^N × 2^N density matrix.
    Density(&'a DMatrix<C>),
}

fn guard(n: usize, max: usize) -> Result<()> {
    if n > max {
        return Err(Error::Capability(format!("dense evaluation limited to N <= {max}, got {n}")));
    }
    Ok(())
}

/// Local ½ n·σ in the (g, e) basis.
fn local(n: &[f64; 3]) -> [[C; 2]; 2] {
    let h = 0.5;
    [
        [C::new(-n[2] * h, 0.0), C::new(n[0] * h, n[1] * h)],
        [C::new(n[0] * h, -n[1] * h), C::new(n[2] * h, 0.0)],
    ]
}

/// `O|ψ⟩` applied site by site.
pub fn apply_generator(gen: &Generator<f64>, psi: &[C]) -> Result<Vec<C>> {
    let n = gen.n_sites();
    guard(n, MAX_DENSE_SITES)?;
    if psi.len() != 1 << n {
        return Err(Error::Validation(format!("state length {} is not 2^{n}", psi.len())));
    }
    let mut out = vec![C::new(0.0, 0.0); psi.len()];
    for (site, nv) in gen.bloch().iter().enumerate() {
        let m = local(nv);
        let bit = 1usize << site;
        for idx in 0..psi.len() {
            if idx & bit != 0 {
                continue;
            }
            let (g, e) = (psi[idx], psi[idx | bit]);
            out[idx] += m[0][0] * g + m[0][1] * e;
            out[idx | bit] += m[1][0] * g + m[1][1] * e;
        }
    }
    Ok(out)
}

/// Dense matrix of O (columns are `O|basis⟩`).
pub fn generator_matrix(gen: &Generator<f64>) -> Result<DMatrix<C>> {
    let n = gen.n_sites();
    guard(n, MAX_DENSITY_SITES)?;
    let dim = 1usize << n;
    let mut m = DMatrix::zeros(dim, dim);
    let mut e = vec![C::new(0.0, 0.0); dim];
    for j in 0..dim {
        e[j] = C::new(1.0, 0.0);
        let col = apply_generator(gen, &e)?;
        for (i, v) in col.into_iter().enumerate() {
            m[(i, j)] = v;
        }
        e[j] = C::new(0.0, 0.0);
    }
    Ok(m)
}

/// Lifts a first-excitation amplitude vector into the 2^N space.
pub fn embed_first_excitation(c: &[C]) -> Result<Vec<C>> {
    guard(c.len(), MAX_DENSE_SITES)?;
    let mut psi = vec![C::new(0.0, 0.0); 1 << c.len()];
    for (m, &a) in c.iter().enumerate() {
        psi[1 << m] = a;
    }
    Ok(psi)
}

/// Tensor product of single-qubit states `(amp_g, amp_e)`.
pub fn product_state(qubits: &[[C; 2]]) -> Result<Vec<C>> {
    guard(qubits.len(), MAX_DENSE_SITES)?;
    let mut psi = vec![C::new(1.0, 0.0); 1 << qubits.len()];
    for (idx, amp) in psi.iter_mut().enumerate() {
        for (site, q) in qubits.iter().enumerate() {
            *amp *= q[(idx >> site) & 1];
        }
    }
    Ok(psi)
}

fn dot(a: &[C], b: &[C]) -> C {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm2(a: &[C]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum()
}

pub fn dense_oracle_qfi(state: DenseState<'_>, gen: &Generator<f64>) -> Result<f64> {
    match state {
        DenseState::Pure(psi) => {
            guard(gen.n_sites(), MAX_DENSE_SITES)?;
            let nn = norm2(psi);
            if (nn - 1.0).abs() > 1e-9 {
                return Err(Error::Validation(format!("state norm² is {nn}")));
            }
            let o = apply_generator(gen, psi)?;
            let mean = dot(psi, &o).re;
            Ok(4.0 * (norm2(&o) - mean * mean))
        }
        DenseState::Ensemble { populations, states } => {
            gen.check_sites(states.nrows())?;
            if populations.len() != states.ncols() {
                return Err(Error::Validation("population/state count mismatch".into()));
            }
            if populations.iter().any(|&p| p < -1e-12) {
                return Err(Error::Domain("negative population".into()));
            }
            let lifted: Vec<Vec<C>> = (0..states.ncols())
                .map(|k| embed_first_excitation(&states.column(k).iter().copied().collect::<Vec<_>>()))
                .collect::<Result<_>>()?;
            for (i, a) in lifted.iter().enumerate() {
                for (j, b) in lifted.iter().enumerate() {
                    let t = if i == j { 1.0 } else { 0.0 };
                    if (dot(a, b) - C::new(t, 0.0)).norm() > 1e-9 {
                        return Err(Error::Validation("ensemble states not orthonormal".into()));
                    }
                }
            }
            let applied: Vec<Vec<C>> = lifted.iter().map(|v| apply_generator(gen, v)).collect::<Result<_>>()?;
            let mut f = 0.0;
            for (l, ol) in applied.iter().enumerate() {
                let pl = populations[l].max(0.0);
                let mut in_set = 0.0;
                for (m, vm) in lifted.iter().enumerate() {
                    let pm = populations[m].max(0.0);
                    let o2 = dot(vm, ol).norm_sqr();
                    in_set += o2;
                    if pl + pm > 1e-15 {
                        f += 2.0 * (pl - pm).powi(2) / (pl + pm) * o2;
                    }
                }
                // the unpopulated rest of the eigenbasis, by completeness
                f += 4.0 * pl * (norm2(ol) - in_set).max(0.0);
            }
            Ok(f)
        }
        DenseState::Density(rho) => {
            let n = gen.n_sites();
            guard(n, MAX_DENSITY_SITES)?;
            if rho.nrows() != 1 << n || !rho.is_square() {
                return Err(Error::Validation(format!("density matrix is {}x{}", rho.nrows(), rho.ncols())));
            }
            let herm = (rho + rho.adjoint()) * C::new(0.5, 0.0);
            let eig = SymmetricEigen::new(herm);
            if let Some(p) = eig.eigenvalues.iter().find(|&&p| p < -1e-10) {
                return Err(Error::Domain(format!("density matrix has eigenvalue {p}")));
            }
            let o = generator_matrix(gen)?;
            let v = &eig.eigenvectors;
            let ob = v.adjoint() * o * v;
            let p: Vec<f64> = eig.eigenvalues.iter().map(|&x| x.max(0.0)).collect();
            let mut f = 0.0;
            for a in 0..p.len() {
                for b in 0..p.len() {
                    let s = p[a] + p[b];
                    if s > 1e-15 {
                        f += 2.0 * (p[a] - p[b]).powi(2) / s * ob[(a, b)].norm_sqr();
                    }
                }
            }
            Ok(f)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: f64) -> C {
        C::new(x, 0.0)
    }

    #[test]
    fn bell_state() {
        let h = 0.5f64.sqrt();
        let psi = embed_first_excitation(&[r(h), r(h)]).unwrap();
        let f = dense_oracle_qfi(DenseState::Pure(&psi), &Generator::dipole_field(2)).unwrap();
        assert!((f - 4.0).abs() < 1e-14);
    }

    #[test]
    fn ground_state_is_shot_noise() {
        for n in 1..7 {
            let psi = product_state(&vec![[r(1.0), r(0.0)]; n]).unwrap();
            let f = dense_oracle_qfi(DenseState::Pure(&psi), &Generator::dipole_field(n)).unwrap();
            assert!((f - n as f64).abs() < 1e-13);
        }
    }

    #[test]
    fn density_matches_ensemble() {
        let h = 0.5f64.sqrt();
        let states = DMatrix::from_column_slice(2, 2, &[r(h), r(h), r(h), r(-h)]);
        let pops = [0.8, 0.2];
        let gen = Generator::from_angles(&[1.0, 2.0], &[0.3, -1.0]).unwrap();
        let fe = dense_oracle_qfi(DenseState::Ensemble { populations: &pops, states: &states }, &gen).unwrap();
        let mut rho = DMatrix::zeros(4, 4);
        for k in 0..2 {
            let v = embed_first_excitation(&[states[(0, k)], states[(1, k)]]).unwrap();
            for i in 0..4 {
                for j in 0..4 {
                    rho[(i, j)] += v[i] * v[j].conj() * pops[k];
                }
            }
        }
        let fd = dense_oracle_qfi(DenseState::Density(&rho), &gen).unwrap();
        assert!((fe - fd).abs() < 1e-10, "{fe} {fd}");
    }

    #[test]
    fn guards() {
        let g = Generator::dipole_field(13);
        let psi = vec![r(0.0); 1 << 13];
        assert!(matches!(dense_oracle_qfi(DenseState::Pure(&psi), &g), Err(Error::Capability(_))));
        let rho = DMatrix::zeros(512, 512);
        assert!(matches!(
            dense_oracle_qfi(DenseState::Density(&rho), &Generator::dipole_field(9)),
            Err(Error::Capability(_))
        ));
    }

    #[test]
    fn generator_is_hermitian() {
        let g = Generator::from_angles(&[0.4, 1.3, 2.0], &[0.0, 1.0, -2.0]).unwrap();
        let m = generator_matrix(&g).unwrap();
        assert!((&m - m.adjoint()).norm() < 1e-15);
    }
}
