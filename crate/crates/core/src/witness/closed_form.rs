use crate::error::{Error, Result};
use crate::scalar::{from_usize, lit, sin_pi, Scalar};

/// Dipole-field QFI of open-chain state k:
/// `(N−2) + 2((1−(−1)^k)/(N+1))·sin²(πkN/(2(N+1)))/sin²(πk/(2(N+1)))`.
pub fn chain_qfi_closed_form<T: Scalar>(n_sites: usize, k: usize) -> Result<T> {
    if n_sites == 0 || k == 0 || k > n_sites {
        return Err(Error::Domain(format!("chain state index k={k} outside 1..={n_sites}")));
    }
    let base = from_usize::<T>(n_sites) - lit::<T>(2.0);
    if k % 2 == 0 {
        return Ok(base);
    }
    let den = 2 * (n_sites + 1);
    // reduce kN modulo the period 2·den so sin_pi sees an exact small rational
    let num = sin_pi(from_usize::<T>((k * n_sites) % (2 * den)) / from_usize::<T>(den));
    let d = sin_pi(from_usize::<T>(k) / from_usize::<T>(den));
    Ok(base + lit::<T>(4.0) / from_usize::<T>(n_sites + 1) * num * num / (d * d))
}

/// Dipole-field QFI of ring state k: `3N − 2` for k = 0, `N − 2` otherwise.
pub fn ring_qfi_closed_form<T: Scalar>(n_sites: usize, k: usize) -> Result<T> {
    if n_sites == 0 || k >= n_sites {
        return Err(Error::Domain(format!("ring state index k={k} outside 0..{n_sites}")));
    }
    let n = from_usize::<T>(n_sites);
    Ok(if k == 0 {
        lit::<T>(3.0) * n - lit::<T>(2.0)
    } else {
        n - lit::<T>(2.0)
    })
}

/// Which chain states beat the shot-noise value N under the dipole field.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct BrightBoundary {
    /// Largest k with F_k > N, if any.
    pub largest_passing: Option<usize>,
    /// Smallest odd k with F_k ≤ N, if any.
    pub smallest_failing_odd: Option<usize>,
    /// `passes[k-1]` is F_k > N.
    pub passes: Vec<bool>,
}

/// Scans k = 1..N of the open chain against the shot-noise value.
pub fn smallest_bright_k(n_sites: usize) -> Result<BrightBoundary> {
    if n_sites < 2 {
        return Err(Error::Domain(format!("need N >= 2, got {n_sites}")));
    }
    let n = n_sites as f64;
    let passes: Vec<bool> = (1..=n_sites)
        .map(|k| chain_qfi_closed_form::<f64>(n_sites, k).map(|f| f > n))
        .collect::<Result<_>>()?;
    let largest_passing = passes.iter().rposition(|&p| p).map(|i| i + 1);
    let smallest_failing_odd = (1..=n_sites).step_by(2).find(|&k| !passes[k - 1]);
    Ok(BrightBoundary {
        largest_passing,
        smallest_failing_odd,
        passes,
    })
}
