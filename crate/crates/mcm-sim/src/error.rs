use thiserror::Error;

/// Errors surfaced by the simulator and analytics pipelines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("solver error: {0}")]
    Solver(String),

    #[error("validation error: {0}")]
    Validation(String),

    #[error("fit error: {0}")]
    Fit(String),

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("unit parse error: {0}")]
    UnitParse(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn solver(msg: impl Into<String>) -> Self {
        Error::Solver(msg.into())
    }
}
