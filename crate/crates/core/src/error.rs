use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Input violates a structural invariant (shape, symmetry, normalization).
    #[error("validation error: {0}")]
    Validation(String),

    /// Argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A positional disorder draw produced a non-physical geometry; the caller resamples.
    #[error("rejected draw: {0}")]
    RejectedDraw(String),

    /// The request exceeds what the routine supports (size guard, unsupported state).
    #[error("capability error: {0}")]
    Capability(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("numerical error: {0}")]
    Numerical(String),

    /// Correlation function has not decayed within the time window.
    #[error("window error: {0}")]
    Window(String),

    /// Spectral integration would truncate a band.
    #[error("integration error: {0}")]
    Integration(String),

    #[error("cell (sigma = {sigma}, realization {index}): {source}")]
    Cell {
        sigma: f64,
        index: u64,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
