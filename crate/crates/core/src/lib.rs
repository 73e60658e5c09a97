//! Exact proportional-representation seat apportionment.
//!
//! Three methods are provided, each in the forms in which it is usually
//! described:
//!
//! * Hare-Niemeyer (largest remainder): [`hare_niemeyer`] and the seat-by-seat
//!   [`sequential_hare`].
//! * d'Hondt-Jefferson and Sainte-Laguë: the quota table of
//!   [`highest_averages`] and the multiplier form of [`multiplicative`], where
//!   a common multiplier `M` is rounded down (d'Hondt) or to the nearest
//!   integer (Sainte-Laguë).
//! * Two-stage runs seeded with district seats: [`seeded_sequential_hare`] and
//!   [`seeded_divisor`].
//!
//! All arithmetic is exact. Ties are resolved by a [`TiePolicy`] priority order
//! rather than a numeric perturbation, so every result is reproducible.

pub mod allocation;
pub mod divisor;
pub mod error;
pub mod hare;
pub mod multiplicative;
pub mod quota;
pub mod rational;
pub mod schedule;
pub mod seeded;
pub mod tally;
pub mod tie;

pub use allocation::{Allocation, Form, Method};
pub use divisor::{highest_averages, DivisorRule, DivisorStep, DivisorTrace};
pub use error::{ApportionError, Result, MAX_HOUSE};
pub use hare::{hare_niemeyer, sequential_hare, AwardEvent};
pub use multiplicative::{
    is_witness, multiplicative, multiplicative_with, seats_at, Engine, MultiplierTrace,
};
pub use quota::{compute_quotas, PartyQuota, QuotaReport, QuotaViolation, ViolationKind};
pub use rational::Rational;
pub use schedule::{MultiplierStep, Rounding};
pub use seeded::{
    multiplier_residuals, residual_stop_bound, seeded_divisor, seeded_sequential_hare,
    DeficitRecord, DivisorStop, ExtraSeats, SeedDistribution, SeededRun, StopReason,
};
pub use tally::{Party, VoteTally};
pub use tie::{TieEvent, TieKind, TieOrder, TiePolicy};

/// Runs `method` in its classical form: largest remainders for Hare, the
/// quota table for the highest-averages methods.
pub fn apportion(
    tally: &VoteTally,
    house_size: u64,
    method: Method,
    tie: TiePolicy,
) -> Result<Allocation> {
    match method {
        Method::Hare => hare_niemeyer(tally, house_size, tie),
        Method::Dhondt => {
            highest_averages(tally, house_size, DivisorRule::Dhondt, tie).map(|r| r.0)
        }
        Method::SainteLague => {
            highest_averages(tally, house_size, DivisorRule::SainteLague, tie).map(|r| r.0)
        }
    }
}
