use serde::Serialize;

use crate::error::{Error, Result};

/// Absolute slack when comparing a QFI value against a producibility bound.
pub const DEPTH_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub n: usize,
    pub s: usize,
    pub r: usize,
    pub bound: usize,
}

/// Largest QFI attainable by an n-producible state of N sites: `s n² + r²`, `s = ⌊N/n⌋`, `r = N − s n`.
pub fn npartite_bound(n: usize, n_sites: usize) -> Result<BoundRow> {
    if n == 0 || n > n_sites {
        return Err(Error::Domain(format!("block size {n} outside 1..={n_sites}")));
    }
    let s = n_sites / n;
    let r = n_sites - s * n;
    Ok(BoundRow {
        n,
        s,
        r,
        bound: s * n * n + r * r,
    })
}

pub fn bound_table(n_sites: usize) -> Vec<BoundRow> {
    (1..=n_sites).map(|n| npartite_bound(n, n_sites).expect("in range")).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Depth {
    /// 1 means nothing witnessed; m ≥ 2 certifies m-partite entanglement.
    pub depth: usize,
    /// The value lies within `DEPTH_TOL` of a bound, so the next class is not claimed.
    pub inconclusive: bool,
}

/// Witnessed entanglement depth: 1 + the largest n whose bound `f_q` strictly exceeds.
pub fn classify_depth(f_q: f64, n_sites: usize) -> Depth {
    let mut depth = 1;
    let mut inconclusive = false;
    for row in bound_table(n_sites) {
        let b = row.bound as f64;
        if (f_q - b).abs() <= DEPTH_TOL {
            inconclusive = true;
        }
        if f_q > b + DEPTH_TOL {
            depth = (row.n + 1).min(n_sites);
        }
    }
    Depth { depth, inconclusive }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QfiReport {
    pub f_q: f64,
    pub n_sites: usize,
    pub witnessed_depth: usize,
    pub inconclusive: bool,
    pub bounds: Vec<BoundRow>,
}

impl QfiReport {
    pub fn new(f_q: f64, n_sites: usize) -> Result<Self> {
        if !(f_q >= -DEPTH_TOL) {
            return Err(Error::Domain(format!("negative QFI {f_q}")));
        }
        let d = classify_depth(f_q, n_sites);
        Ok(Self {
            f_q,
            n_sites,
            witnessed_depth: d.depth,
            inconclusive: d.inconclusive,
            bounds: bound_table(n_sites),
        })
    }
}
