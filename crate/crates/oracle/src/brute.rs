//! Characterizations of each method that do not share code with the engine.
//!
//! Every seat vector of the house is enumerated and filtered by a property
//! that identifies the method's outcomes. Arithmetic here goes through
//! [`Rational`] rather than the engine's integer keys.

use apportion::{compute_quotas, DivisorRule, QuotaViolation, Rational, VoteTally};
use serde::{Deserialize, Serialize};

use crate::enumerate::enumerate_allocations;
use crate::error::{OracleError, Result};

fn bid(votes: u64, divisor: u64) -> Rational {
    Rational::new(votes, divisor)
}

/// All seat vectors a divisor method can produce, ties resolved any way.
///
/// `n` qualifies iff no party's bid for one more seat beats the weakest bid
/// that won a seat: `max_i v_i / d(n_i) <= min_{n_j > 0} v_j / d(n_j - 1)`.
pub fn divisor_outcomes(
    tally: &VoteTally,
    house_size: u64,
    rule: DivisorRule,
) -> Result<Vec<Vec<u64>>> {
    let votes = tally.vote_vector();
    Ok(enumerate_allocations(votes.len(), house_size)?
        .filter(|n| {
            let best_next = votes
                .iter()
                .zip(n)
                .map(|(&v, &s)| bid(v, rule.divisor(s)))
                .max()
                .expect("non-empty");
            votes
                .iter()
                .zip(n)
                .filter(|(_, &s)| s > 0)
                .all(|(&v, &s)| bid(v, rule.divisor(s - 1)) >= best_next)
        })
        .collect())
}

/// All seat vectors minimizing `sum |N f_i - n_i|`, which are exactly the
/// largest-remainder outcomes.
pub fn largest_remainder_outcomes(tally: &VoteTally, house_size: u64) -> Result<Vec<Vec<u64>>> {
    let ideals: Vec<Rational> = (0..tally.len())
        .map(|p| &tally.fraction(p) * &Rational::from(house_size))
        .collect();
    let mut best: Option<Rational> = None;
    let mut out = Vec::new();
    for n in enumerate_allocations(tally.len(), house_size)? {
        let distance: Rational = ideals
            .iter()
            .zip(&n)
            .map(|(q, &s)| (q - &Rational::from(s)).abs())
            .collect::<Vec<_>>()
            .iter()
            .sum();
        match best.as_ref().map(|b| distance.cmp(b)) {
            Some(std::cmp::Ordering::Greater) => {}
            Some(std::cmp::Ordering::Equal) => out.push(n),
            _ => {
                best = Some(distance);
                out = vec![n];
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotaCheck {
    pub holds: bool,
    pub violations: Vec<QuotaViolation>,
}

/// Whether every party's seats lie within its lower and upper quota.
pub fn check_quota_property(
    tally: &VoteTally,
    house_size: u64,
    seats: &[u64],
) -> Result<QuotaCheck> {
    if seats.len() != tally.len() {
        return Err(OracleError::PartyMismatch {
            expected: tally.len(),
            given: seats.len(),
        });
    }
    let violations = compute_quotas(tally, house_size)?.violations(seats)?;
    Ok(QuotaCheck {
        holds: violations.is_empty(),
        violations,
    })
}
