use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Arguments outside the region where the model is defined.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("quadrature error: {0}")]
    Quadrature(String),

    /// Numerical integration of the envelope equation left the physical region.
    #[error("envelope integration reached f = {value} <= 0 at t = {t}")]
    NonPositiveF { t: f64, value: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
