use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("divergent: {0}")]
    Divergent(String),
    #[error("no convergence after {terms} terms (tail estimate {tail_estimate:e})")]
    Truncation { terms: u64, tail_estimate: f64 },
    #[error("product of two divergent terms is not representable")]
    DivergentProduct,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
