use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("circulant embedding is not positive semi-definite (min eigenvalue {min:e}, max {max:e})")]
    EmbeddingNotPsd { min: f64, max: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha <= 2.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("alpha must lie in (0, 2], got {alpha}")))
    }
}
