use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// The result could not be produced to the working precision.
    #[error("precision loss: {0}")]
    Precision(String),

    #[error("quadrature did not converge: estimated error {achieved_error:e} after {evaluations} evaluations (target {target:e})")]
    Convergence {
        achieved_error: f64,
        target: f64,
        evaluations: usize,
    },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
