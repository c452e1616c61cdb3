//! Closed-form eigensystems of the pristine chain and ring.

use nalgebra::{Complex, DMatrix};

use super::basis::ExcitonBasis;
use crate::error::{Error, Result};
use crate::scalar::{cos_pi, from_usize, lit, sin_pi, Scalar};

fn check_chain_k(n: usize, k: usize) -> Result<()> {
    if n == 0 || k == 0 || k > n {
        return Err(Error::Domain(format!("chain state index k={k} outside 1..={n}")));
    }
    Ok(())
}

fn check_ring_k(n: usize, k: usize) -> Result<()> {
    if n == 0 || k >= n {
        return Err(Error::Domain(format!("ring state index k={k} outside 0..{n}")));
    }
    Ok(())
}

/// Site amplitudes `√(2/(N+1))·sin(πkn/(N+1))`, n = 1..N, of the open nearest-neighbour chain.
pub fn analytic_chain_state<T: Scalar>(n_sites: usize, k: usize) -> Result<Vec<T>> {
    check_chain_k(n_sites, k)?;
    let np1 = from_usize::<T>(n_sites + 1);
    let norm = (lit::<T>(2.0) / np1).sqrt();
    Ok((1..=n_sites)
        .map(|site| {
            // k·n/(N+1) as an exact rational before scaling by π
            let x = from_usize::<T>((k * site) % (2 * (n_sites + 1))) / np1;
            norm * sin_pi(x)
        })
        .collect())
}

/// Site amplitudes `e^{2πikn/N}/√N`, n = 1..N, of the ring.
pub fn analytic_ring_state<T: Scalar>(n_sites: usize, k: usize) -> Result<Vec<Complex<T>>> {
    check_ring_k(n_sites, k)?;
    let nn = from_usize::<T>(n_sites);
    let norm = T::one() / nn.sqrt();
    Ok((1..=n_sites)
        .map(|site| {
            let x = lit::<T>(2.0) * from_usize::<T>((k * site) % n_sites) / nn;
            Complex::new(norm * cos_pi(x), norm * sin_pi(x))
        })
        .collect())
}

/// `ω − 2J·cos(πk/(N+1))`.
pub fn chain_energy<T: Scalar>(n_sites: usize, k: usize, omega: T, j: T) -> Result<T> {
    check_chain_k(n_sites, k)?;
    let x = from_usize::<T>(k) / from_usize::<T>(n_sites + 1);
    Ok(omega - lit::<T>(2.0) * j * cos_pi(x))
}

/// `ω − 2J·cos(2πk/N)` for the nearest-neighbour ring.
pub fn ring_energy<T: Scalar>(n_sites: usize, k: usize, omega: T, j: T) -> Result<T> {
    check_ring_k(n_sites, k)?;
    let x = lit::<T>(2.0) * from_usize::<T>(k) / from_usize::<T>(n_sites);
    Ok(omega - lit::<T>(2.0) * j * cos_pi(x))
}

/// Analytic exciton basis of the pristine open chain.
pub fn analytic_chain_basis<T: Scalar>(n_sites: usize, omega: T, j: T) -> Result<ExcitonBasis<T>> {
    let mut states = DMatrix::zeros(n_sites, n_sites);
    let mut energies = Vec::with_capacity(n_sites);
    for k in 1..=n_sites {
        let amps = analytic_chain_state::<T>(n_sites, k)?;
        for (i, a) in amps.into_iter().enumerate() {
            states[(i, k - 1)] = Complex::new(a, T::zero());
        }
        energies.push(chain_energy(n_sites, k, omega, j)?);
    }
    ExcitonBasis::from_parts(energies, states)
}

/// Squared ground-to-exciton transition dipole of chain state k, in units of μ².
///
/// `((1 − (−1)^k)/(N+1))·cot²(πk/(2(N+1)))`; zero for even k.
pub fn transition_dipole_chain<T: Scalar>(n_sites: usize, k: usize) -> Result<T> {
    check_chain_k(n_sites, k)?;
    if k % 2 == 0 {
        return Ok(T::zero());
    }
    let x = from_usize::<T>(k) / from_usize::<T>(2 * (n_sites + 1));
    let cot = cos_pi(x) / sin_pi(x);
    Ok(lit::<T>(2.0) / from_usize::<T>(n_sites + 1) * cot * cot)
}

/// `(Σ|c_i|²)² / Σ|c_i|⁴`.
pub fn participation_ratio<T: Scalar>(amps: &[Complex<T>]) -> Result<T> {
    let (s2, s4) = amps.iter().fold((T::zero(), T::zero()), |(a, b), c| {
        let p = c.norm_sqr();
        (a + p, b + p * p)
    });
    if s4 == T::zero() {
        return Err(Error::Domain("participation ratio of the zero vector".into()));
    }
    Ok(s2 * s2 / s4)
}
