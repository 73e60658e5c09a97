use apportion::ApportionError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("enumeration would produce about {estimate} vectors, above the limit of {limit}")]
    EnumerationTooLarge { estimate: u128, limit: u128 },
    #[error("invalid instance space: {0}")]
    InvalidSpace(String),
    #[error("allocation has {given} parties but the tally has {expected}")]
    PartyMismatch { expected: usize, given: usize },
    #[error(transparent)]
    Apportion(#[from] ApportionError),
}

pub type Result<T, E = OracleError> = std::result::Result<T, E>;
