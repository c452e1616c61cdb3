//! Linear-response spectra of the dimer and the spectral route to the QFI.

mod bath;
mod correlation;
mod extinction;
mod transform;

pub use bath::*;
pub use correlation::*;
pub use extinction::*;
pub use transform::*;
