use thiserror::Error;

/// Largest house (and district-seat total) accepted by the engine.
pub const MAX_HOUSE: u64 = 10_000_000;

/// Largest denominator accepted for a rounding threshold.
pub const MAX_THRESHOLD_DENOMINATOR: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ApportionError {
    #[error("tally has no parties")]
    EmptyTally,
    #[error("no party has positive votes")]
    NoPositiveVotes,
    #[error("duplicate party id {0:?}")]
    DuplicateParty(String),
    #[error("total votes overflow a 64-bit counter")]
    VoteOverflow,
    #[error("house size {0} exceeds the supported maximum of {MAX_HOUSE}")]
    HouseTooLarge(u64),
    #[error("rounding threshold {0} must lie in (0, 1] with denominator at most {MAX_THRESHOLD_DENOMINATOR}")]
    InvalidThreshold(String),
    #[error("district seats given for {given} parties but the tally has {expected}")]
    SeedLengthMismatch { expected: usize, given: usize },
    #[error("{what} has {given} parties but the tally has {expected}")]
    PartyCountMismatch {
        what: &'static str,
        expected: usize,
        given: usize,
    },
    #[error(
        "party {0:?} has no votes but holds district seats; the residual stop can never be met"
    )]
    UnreachableResidualStop(String),
    #[error("residual stop needs about {0} additional seats, beyond the supported maximum")]
    ResidualStopTooFar(u64),
}

pub type Result<T, E = ApportionError> = std::result::Result<T, E>;
