use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};

/// Local generator `O = ½ Σ_i n_i·σ_i`, one unit Bloch vector per site.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar + Serialize + serde::de::DeserializeOwned")]
pub struct Generator<T: Scalar = f64> {
    bloch: Vec<[T; 3]>,
}

impl<T: Scalar> Generator<T> {
    /// Rejects any vector whose norm deviates from 1 by more than the scalar's validation tolerance.
    pub fn new(bloch: Vec<[T; 3]>) -> Result<Self> {
        if bloch.is_empty() {
            return Err(Error::Validation("generator needs at least one site".into()));
        }
        for (i, n) in bloch.iter().enumerate() {
            let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
            if !((norm - T::one()).abs() <= T::validation_tol()) {
                return Err(Error::Validation(format!("Bloch vector {i} has norm {norm:?}")));
            }
        }
        Ok(Self { bloch })
    }

    /// `n_i = (sinθ cosφ, sinθ sinφ, cosθ)`.
    pub fn from_angles(theta: &[T], phi: &[T]) -> Result<Self> {
        if theta.len() != phi.len() {
            return Err(Error::Validation("angle vectors differ in length".into()));
        }
        Self::new(
            theta
                .iter()
                .zip(phi)
                .map(|(&t, &p)| [t.sin() * p.cos(), t.sin() * p.sin(), t.cos()])
                .collect(),
        )
    }

    /// All Bloch vectors along x̂: `O = ½ Σ σ^x`.
    pub fn dipole_field(n_sites: usize) -> Self {
        Self {
            bloch: vec![[T::one(), T::zero(), T::zero()]; n_sites],
        }
    }

    pub fn n_sites(&self) -> usize {
        self.bloch.len()
    }

    pub fn bloch(&self) -> &[[T; 3]] {
        &self.bloch
    }

    /// Every vector rotated by `angle` about ẑ.
    pub fn rotated_z(&self, angle: T) -> Self {
        let (s, c) = (angle.sin(), angle.cos());
        Self {
            bloch: self
                .bloch
                .iter()
                .map(|n| [c * n[0] - s * n[1], s * n[0] + c * n[1], n[2]])
                .collect(),
        }
    }

    /// Largest `|n_i^z|`.
    pub fn max_abs_z(&self) -> T {
        self.bloch.iter().fold(T::zero(), |m, n| m.max(n[2].abs()))
    }

    pub(crate) fn check_sites(&self, n: usize) -> Result<()> {
        if self.n_sites() != n {
            return Err(Error::Validation(format!(
                "generator has {} sites, state has {n}",
                self.n_sites()
            )));
        }
        Ok(())
    }
}

/// Renormalizes an arbitrary nonzero 3-vector; used by random generator draws.
pub fn unit<T: Scalar>(v: [T; 3]) -> Option<[T; 3]> {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    if n <= lit::<T>(1e-12) {
        return None;
    }
    Some([v[0] / n, v[1] / n, v[2] / n])
}
