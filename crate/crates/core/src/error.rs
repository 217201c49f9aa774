//! Error type shared by every module in the crate.

use num_complex::Complex64;

/// Crate-wide error type.
///
/// `Accuracy` carries the best estimate computed so far, so callers can
/// decide whether a degraded result is still usable.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// A point or parameter lies outside the mathematical domain of the
    /// operation (log singularity, point outside a worm variant, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Invalid configuration: bad tolerances, missing profile, undersampled
    /// input, and similar caller mistakes.
    #[error("configuration error: {0}")]
    Config(String),

    /// Evaluation at a genuine singularity of the formula (zero coordinate
    /// in a kernel pullback, vanishing `z2 w2` product, ...).
    #[error("singularity error: {0}")]
    Singularity(String),

    /// The requested accuracy could not be certified; the best estimate and
    /// its error bound are attached.
    #[error("accuracy error: {message} (best {value}, err {err_estimate:.3e})")]
    Accuracy {
        message: String,
        value: Complex64,
        err_estimate: f64,
        evaluations: u64,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn singularity(msg: impl Into<String>) -> Self {
        Error::Singularity(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
