use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("not embeddable: {0}")]
    NotEmbeddable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid config: {0}")]
    Config(String),
    #[error("no convergence: {0}")]
    Convergence(String),
    #[error("path too close to singular locus: {0}")]
    Singular(String),
}

pub type Result<T> = std::result::Result<T, Error>;
