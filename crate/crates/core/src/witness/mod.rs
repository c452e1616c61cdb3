//! QFI witnesses: subspace formulas, closed forms, producibility bounds and a dense oracle.

mod bounds;
mod closed_form;
mod dense;
mod generator;
mod subspace;

pub use bounds::{bound_table, classify_depth, npartite_bound, BoundRow, Depth, QfiReport, DEPTH_TOL};
pub use closed_form::{chain_qfi_closed_form, ring_qfi_closed_form, smallest_bright_k, BrightBoundary};
pub use dense::{
    apply_generator, dense_oracle_qfi, embed_first_excitation, generator_matrix, product_state, DenseState,
    MAX_DENSE_SITES, MAX_DENSITY_SITES,
};
pub use generator::{unit, Generator};
pub use subspace::{qfi_mixed, qfi_pure, qfi_thermal, qfi_thermal_dipole};
