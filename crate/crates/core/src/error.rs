use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unbounded")]
    Unbounded,
    #[error("degenerate: {0}")]
    Degenerate(String),
    #[error("no exact method for {0}")]
    NoExactMethod(String),
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("method limit: {0}")]
    MethodLimit(String),
    #[error("instance too large: {0}")]
    InstanceTooLarge(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("rho exceeds inradius ({rho} > {inradius})")]
    RhoExceedsInradius { rho: f64, inradius: f64 },
    #[error("bad cut tree: {0}")]
    BadCutTree(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
