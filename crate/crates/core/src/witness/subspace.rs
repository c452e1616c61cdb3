//! QFI of first-excitation states without leaving the N-dimensional subspace.
//!
//! With `w_i = n_i^x + i n_i^y` the generator splits as `O = Z + A + A†`, where
//! `A = ½ Σ w̄_i σ_i^+` raises and `A† = ½ Σ w_i σ_i^-` lowers the excitation number,
//! and `Z = ½ Σ n_i^z σ_i^z` is diagonal on site states with entries
//! `d_m = n_m^z − ½ Σ_i n_i^z`. For a subspace state c:
//!
//!   ‖Ac‖² + ‖A†c‖² = ¼[Σ_i |c_i|²(W − 2|w_i|²) + 2|Σ_i c_i w_i|²],  W = Σ|w_i|².

use nalgebra::{Complex, DMatrix};

use super::generator::Generator;
use crate::aggregate::{ExcitonBasis, ThermalState};
use crate::error::{Error, Result};
use crate::scalar::{cabs, from_usize, lit, Scalar};

/// Pair weights below this are treated as zero population.
const PAIR_FLOOR: f64 = 1e-15;

struct Parts<T: Scalar> {
    w: Vec<Complex<T>>,
    w_norm2: Vec<T>,
    w_total: T,
    d: Vec<T>,
}

fn parts<T: Scalar>(gen: &Generator<T>) -> Parts<T> {
    let b = gen.bloch();
    let w: Vec<Complex<T>> = b.iter().map(|n| Complex::new(n[0], n[1])).collect();
    let w_norm2: Vec<T> = w.iter().map(|x| x.norm_sqr()).collect();
    let w_total = w_norm2.iter().copied().fold(T::zero(), |a, b| a + b);
    let sz = b.iter().fold(T::zero(), |a, n| a + n[2]);
    let half = lit::<T>(0.5);
    let d = b.iter().map(|n| n[2] - half * sz).collect();
    Parts { w, w_norm2, w_total, d }
}

fn norm2<T: Scalar>(c: &[Complex<T>]) -> T {
    c.iter().fold(T::zero(), |a, x| a + x.norm_sqr())
}

fn check_normalized<T: Scalar>(c: &[Complex<T>]) -> Result<()> {
    let n = norm2(c);
    if !((n - T::one()).abs() <= T::validation_tol()) {
        return Err(Error::Validation(format!("state norm² is {n:?}, expected 1")));
    }
    Ok(())
}

/// `‖Ac‖² + ‖A†c‖²`, the weight O carries out of the subspace.
fn transverse<T: Scalar>(p: &Parts<T>, c: &[Complex<T>]) -> T {
    let two = lit::<T>(2.0);
    let mut diag = T::zero();
    let mut coh = Complex::new(T::zero(), T::zero());
    for i in 0..c.len() {
        diag += c[i].norm_sqr() * (p.w_total - two * p.w_norm2[i]);
        coh += c[i] * p.w[i];
    }
    lit::<T>(0.25) * (diag + two * coh.norm_sqr())
}

/// `⟨μ|Z|λ⟩`.
fn z_element<T: Scalar>(p: &Parts<T>, mu: &[Complex<T>], lam: &[Complex<T>]) -> Complex<T> {
    mu.iter()
        .zip(lam)
        .zip(&p.d)
        .fold(Complex::new(T::zero(), T::zero()), |a, ((m, l), &d)| a + m.conj() * *l * d)
}

/// `‖Zλ‖²`.
fn z_norm2<T: Scalar>(p: &Parts<T>, lam: &[Complex<T>]) -> T {
    lam.iter().zip(&p.d).fold(T::zero(), |a, (l, &d)| a + l.norm_sqr() * d * d)
}

/// `4 Var(O)` for a normalized first-excitation state.
pub fn qfi_pure<T: Scalar>(state: &[Complex<T>], gen: &Generator<T>) -> Result<T> {
    gen.check_sites(state.len())?;
    check_normalized(state)?;
    let p = parts(gen);
    let mean_z = state.iter().zip(&p.d).fold(T::zero(), |a, (c, &d)| a + c.norm_sqr() * d);
    let var_z = z_norm2(&p, state) - mean_z * mean_z;
    let four = lit::<T>(4.0);
    Ok(four * transverse(&p, state) + four * var_z.max(T::zero()))
}

/// Mixed-state QFI of `ρ = Σ_λ p_λ |λ⟩⟨λ|` with every |λ⟩ in the first-excitation subspace.
///
/// `states` columns are orthonormal subspace vectors; the set may be incomplete,
/// the missing part of the eigenbasis having zero population.
pub fn qfi_mixed<T: Scalar>(populations: &[T], states: &DMatrix<Complex<T>>, gen: &Generator<T>) -> Result<T> {
    let n = states.nrows();
    gen.check_sites(n)?;
    if populations.len() != states.ncols() {
        return Err(Error::Validation(format!(
            "{} populations for {} states",
            populations.len(),
            states.ncols()
        )));
    }
    let tol = T::validation_tol();
    if let Some(p) = populations.iter().find(|&&p| !(p >= -tol)) {
        return Err(Error::Domain(format!("negative population {p:?}")));
    }
    let total = populations.iter().copied().fold(T::zero(), |a, b| a + b);
    if !((total - T::one()).abs() <= tol) {
        return Err(Error::Validation(format!("populations sum to {total:?}")));
    }
    let gram = states.adjoint() * states;
    for i in 0..gram.nrows() {
        for j in 0..gram.ncols() {
            let target = if i == j { T::one() } else { T::zero() };
            if cabs(gram[(i, j)] - Complex::new(target, T::zero())) > tol {
                return Err(Error::Validation(format!("states not orthonormal at ({i}, {j})")));
            }
        }
    }

    let p = parts(gen);
    let cols: Vec<Vec<Complex<T>>> = (0..states.ncols())
        .map(|k| states.column(k).iter().copied().collect())
        .collect();
    let floor = lit::<T>(PAIR_FLOOR);
    let (two, four) = (lit::<T>(2.0), lit::<T>(4.0));
    let mut f = T::zero();
    for (l, cl) in cols.iter().enumerate() {
        let pl = populations[l].max(T::zero());
        let mut inside = T::zero();
        for (m, cm) in cols.iter().enumerate() {
            let pm = populations[m].max(T::zero());
            let z2 = z_element(&p, cm, cl).norm_sqr();
            inside += z2;
            let s = pl + pm;
            if s > floor {
                let dp = pl - pm;
                f += two * dp * dp / s * z2;
            }
        }
        if pl > floor {
            // zero- and two-excitation states plus subspace states outside the set, all unpopulated
            let residual = (z_norm2(&p, cl) - inside).max(T::zero());
            f += four * pl * (transverse(&p, cl) + residual);
        }
    }
    Ok(f)
}

/// Thermal QFI under the dipole-field generator: `Σ_n p_n [(N − 2) + 2|Σ_m c_m^{(n)}|²]`.
pub fn qfi_thermal_dipole<T: Scalar>(basis: &ExcitonBasis<T>, state: &ThermalState<T>) -> Result<T> {
    if state.len() != basis.len() {
        return Err(Error::Domain(format!(
            "{} populations for a basis of {} states",
            state.len(),
            basis.len()
        )));
    }
    let nm2 = from_usize::<T>(basis.n_sites()) - lit::<T>(2.0);
    let two = lit::<T>(2.0);
    Ok(state
        .populations()
        .iter()
        .zip(basis.dipole_strengths())
        .fold(T::zero(), |a, (&p, s)| a + p * (nm2 + two * s)))
}

/// `qfi_mixed` over an exciton basis and its thermal populations, for any generator.
pub fn qfi_thermal<T: Scalar>(basis: &ExcitonBasis<T>, state: &ThermalState<T>, gen: &Generator<T>) -> Result<T> {
    qfi_mixed(state.populations(), basis.states(), gen)
}
