use nalgebra::DMatrix;

use super::spec::{min_separation, AggregateSpec, Boundary, Coupling, CouplingRange, DisorderDraw, Topology};
use crate::error::{Error, Result};
use crate::scalar::{from_usize, Scalar};

/// Site positions `x_m = (m + δx_m)·a`, rejecting draws that reorder sites or
/// bring neighbours closer than the minimum separation.
pub fn site_positions<T: Scalar>(
    n_sites: usize,
    lattice_a: T,
    draw: Option<&DisorderDraw<T>>,
) -> Result<Vec<T>> {
    let mut xs = Vec::with_capacity(n_sites);
    for m in 0..n_sites {
        let dx = draw.map_or(T::zero(), |d| d.position_offsets[m]);
        xs.push((from_usize::<T>(m) + dx) * lattice_a);
    }
    let min_gap = min_separation::<T>() * lattice_a;
    for m in 1..n_sites {
        let gap = xs[m] - xs[m - 1];
        if !(gap >= min_gap) {
            return Err(Error::RejectedDraw(format!(
                "sites {} and {} separated by {:?} (< {:?})",
                m - 1,
                m,
                gap,
                min_gap
            )));
        }
    }
    Ok(xs)
}

/// First-excitation Hamiltonian in the site basis (cm⁻¹).
///
/// Diagonal entries are site energies plus any drawn offsets; off-diagonal
/// entries are the coupling matrix elements `J_mn`. A disorder draw must be
/// supplied exactly when the topology is a disordered chain.
pub fn build_hamiltonian<T: Scalar>(
    spec: &AggregateSpec<T>,
    draw: Option<&DisorderDraw<T>>,
) -> Result<DMatrix<T>> {
    spec.validate()?;
    let n = spec.n_sites();
    match (spec.topology, draw) {
        (Topology::DisorderedChain, None) => {
            return Err(Error::Validation(
                "disordered chain requires a disorder realization".into(),
            ))
        }
        (t, Some(_)) if t != Topology::DisorderedChain => {
            return Err(Error::Validation(format!(
                "disorder realization supplied for {t:?} topology"
            )))
        }
        _ => {}
    }
    if let Some(d) = draw {
        if d.energy_offsets.len() != n || d.position_offsets.len() != n {
            return Err(Error::Validation(format!(
                "disorder draw has {} energies / {} positions for {n} sites",
                d.energy_offsets.len(),
                d.position_offsets.len()
            )));
        }
    }

    let mut h = DMatrix::zeros(n, n);
    for i in 0..n {
        let de = draw.map_or(T::zero(), |d| d.energy_offsets[i]);
        h[(i, i)] = spec.site_energies[i] + de;
    }

    match &spec.coupling {
        Coupling::Matrix(jm) => {
            for i in 0..n {
                for j in (i + 1)..n {
                    // symmetrize so the output is exactly Hermitian
                    let v = (jm[(i, j)] + jm[(j, i)]) * nalgebra::convert::<f64, T>(0.5);
                    h[(i, j)] = v;
                    h[(j, i)] = v;
                }
            }
        }
        Coupling::NearestNeighbor(j) => {
            for i in 0..n - 1 {
                h[(i, i + 1)] = -*j;
                h[(i + 1, i)] = -*j;
            }
            if spec.boundary == Boundary::Periodic && n > 2 {
                h[(0, n - 1)] = -*j;
                h[(n - 1, 0)] = -*j;
            }
        }
        Coupling::DipoleLaw {
            jprime,
            lattice_a,
            range,
        } => {
            let xs = site_positions(n, *lattice_a, draw)?;
            for m in 0..n {
                for k in (m + 1)..n {
                    if *range == CouplingRange::NearestNeighbor && k != m + 1 {
                        continue;
                    }
                    let r = (xs[k] - xs[m]).abs();
                    let v = -*jprime / (r * r * r);
                    h[(m, k)] = v;
                    h[(k, m)] = v;
                }
            }
        }
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fmo_dimer_matrix() {
        let spec = AggregateSpec::dimer(12328.0, 12472.0, 70.7);
        let h = build_hamiltonian(&spec, None).unwrap();
        assert_eq!(h, DMatrix::from_row_slice(2, 2, &[12328.0, -70.7, -70.7, 12472.0]));
    }

    #[test]
    fn nearest_neighbour_chain_is_tridiagonal() {
        let h = build_hamiltonian(&AggregateSpec::chain(3, 0.0, 1.0), None).unwrap();
        let expected =
            DMatrix::from_row_slice(3, 3, &[0.0, -1.0, 0.0, -1.0, 0.0, -1.0, 0.0, -1.0, 0.0]);
        assert_eq!(h, expected);
    }

    #[test]
    fn ring_closes_the_loop() {
        let h = build_hamiltonian(&AggregateSpec::ring(4, 0.0, 1.0), None).unwrap();
        assert_eq!(h[(0, 3)], -1.0);
        assert_eq!(h[(3, 0)], -1.0);
        assert_eq!(h[(0, 2)], 0.0);
    }

    #[test]
    fn dipole_law_at_zero_disorder() {
        let spec = AggregateSpec::disordered_chain(3, 0.0, 1.0, 1.0);
        let h = build_hamiltonian(&spec, Some(&DisorderDraw::zero(3))).unwrap();
        assert_eq!(h[(0, 1)], -1.0);
        assert_eq!(h[(1, 2)], -1.0);
        assert_eq!(h[(0, 2)], -1.0 / 8.0);
        assert_eq!(h, h.transpose());
    }

    #[test]
    fn zero_disorder_reduces_to_chain_up_to_long_range_tail() {
        let n = 6;
        let chain = build_hamiltonian(&AggregateSpec::chain(n, 5.0, 2.0), None).unwrap();
        let full = build_hamiltonian(
            &AggregateSpec::disordered_chain(n, 5.0, 2.0, 1.0),
            Some(&DisorderDraw::zero(n)),
        )
        .unwrap();
        let nn = build_hamiltonian(
            &AggregateSpec::disordered_chain(n, 5.0, 2.0, 1.0)
                .with_coupling_range(CouplingRange::NearestNeighbor),
            Some(&DisorderDraw::zero(n)),
        )
        .unwrap();
        assert_eq!(chain, nn);
        for i in 0..n {
            for j in 0..n {
                let d = i.abs_diff(j);
                if d <= 1 {
                    assert_eq!(full[(i, j)], chain[(i, j)]);
                } else {
                    assert_eq!(full[(i, j)], -2.0 / (d * d * d) as f64);
                }
            }
        }
    }

    #[test]
    fn draw_presence_must_match_topology() {
        let chain = AggregateSpec::chain(3, 0.0, 1.0);
        assert!(matches!(
            build_hamiltonian(&chain, Some(&DisorderDraw::zero(3))),
            Err(Error::Validation(_))
        ));
        let dis = AggregateSpec::disordered_chain(3, 0.0, 1.0, 1.0);
        assert!(matches!(build_hamiltonian(&dis, None), Err(Error::Validation(_))));
    }

    #[test]
    fn asymmetric_explicit_coupling_is_rejected() {
        let mut spec = AggregateSpec::chain(2, 0.0, 1.0);
        spec.coupling = Coupling::Matrix(DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 2.0, 0.0]));
        assert!(matches!(build_hamiltonian(&spec, None), Err(Error::Validation(_))));
    }

    #[test]
    fn collapsed_sites_are_a_rejected_draw() {
        let spec = AggregateSpec::disordered_chain(3, 0.0, 1.0, 1.0);
        let draw = DisorderDraw {
            energy_offsets: vec![0.0; 3],
            position_offsets: vec![0.0, 0.95, 0.0],
        };
        assert!(matches!(build_hamiltonian(&spec, Some(&draw)), Err(Error::RejectedDraw(_))));
        let crossed = DisorderDraw {
            energy_offsets: vec![0.0; 3],
            position_offsets: vec![0.0, -1.5, 0.0],
        };
        assert!(matches!(build_hamiltonian(&spec, Some(&crossed)), Err(Error::RejectedDraw(_))));
    }

    #[test]
    fn mirrored_draw_gives_reversed_hamiltonian() {
        let spec = AggregateSpec::<f64>::disordered_chain(4, 0.0, 1.0, 1.0);
        let draw = DisorderDraw {
            energy_offsets: vec![0.1, -0.2, 0.3, 0.05],
            position_offsets: vec![0.01, -0.03, 0.02, 0.04],
        };
        let h = build_hamiltonian(&spec, Some(&draw)).unwrap();
        let hm = build_hamiltonian(&spec, Some(&draw.mirrored())).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert!((h[(i, j)] - hm[(3 - i, 3 - j)]).abs() < 1e-12);
            }
        }
    }
}
