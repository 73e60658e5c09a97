//! Independent checks for the `apportion` engine.
//!
//! Brute-force enumeration of every allocation of a small house, randomized
//! suites comparing the different forms of each method, Monte Carlo seat-bias
//! statistics, and canonical-order searches for quota and house-monotonicity
//! failures. Every suite is reproducible from its [`InstanceSpace`]; serial
//! and parallel execution produce identical reports.

pub mod bias;
pub mod brute;
pub mod enumerate;
pub mod error;
pub mod report;
pub mod search;
pub mod space;
pub mod suite;

pub use bias::{bias_montecarlo, bias_sample, vote_ranking, BiasSample};
pub use brute::{check_quota_property, divisor_outcomes, largest_remainder_outcomes, QuotaCheck};
pub use enumerate::{composition_count, enumerate_allocations, ENUMERATION_LIMIT};
pub use error::{OracleError, Result};
pub use report::{Check, Disagreement, Failure, Statistic, SuiteKind, SuiteReport, Witness};
pub use search::{
    find_house_monotonicity_violation, find_quota_violation, monotonicity_at, quota_violation_at,
    search_house_monotonicity_violation, search_quota_violation, MonotonicityWitness, QuotaWitness,
    SearchOutcome,
};
pub use space::{Instance, InstanceSpace, Range, TieMode};
pub use suite::{
    check_equivalence, equivalence_suite, paradox_suite, replay, Execution, TrialOutcome,
};
