use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("capacity exceeded: {what} = {requested} is above the limit {limit}")]
    Capacity {
        what: &'static str,
        requested: u64,
        limit: u64,
    },
    #[error("table length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("series diverges under the supplied growth bound: need {need}, got {got}")]
    Divergence { need: String, got: f64 },
    #[error("table violates its growth bound at n = {n}: |f(n)| = {actual} > {allowed}")]
    BoundViolation { n: usize, actual: f64, allowed: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("cache format error: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
