use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{ApportionError, Result};
use crate::rational::Rational;
use crate::tally::{check_house, VoteTally};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartyQuota {
    /// `N * v_i / V`.
    pub ideal: Rational,
    pub lower: u64,
    pub upper: u64,
}

/// Ideal seat entitlements for one house size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotaReport {
    pub house_size: u64,
    pub parties: Vec<PartyQuota>,
    /// Votes per seat, `V / N`; absent for an empty house.
    pub ideal_quota: Option<Rational>,
}

impl QuotaReport {
    /// Residuals `N f_i - n_i` for a concrete allocation.
    pub fn residuals(&self, seats: &[u64]) -> Result<Vec<Rational>> {
        if seats.len() != self.parties.len() {
            return Err(ApportionError::PartyCountMismatch {
                what: "allocation",
                expected: self.parties.len(),
                given: seats.len(),
            });
        }
        Ok(self
            .parties
            .iter()
            .zip(seats)
            .map(|(q, &n)| &q.ideal - &Rational::from(n))
            .collect())
    }

    /// Parties whose seat count lies outside `[lower, upper]`.
    pub fn violations(&self, seats: &[u64]) -> Result<Vec<QuotaViolation>> {
        if seats.len() != self.parties.len() {
            return Err(ApportionError::PartyCountMismatch {
                what: "allocation",
                expected: self.parties.len(),
                given: seats.len(),
            });
        }
        Ok(self
            .parties
            .iter()
            .zip(seats)
            .enumerate()
            .filter_map(|(party, (q, &seats))| {
                if seats < q.lower {
                    Some(QuotaViolation {
                        party,
                        seats,
                        bound: q.lower,
                        kind: ViolationKind::BelowLower,
                    })
                } else if seats > q.upper {
                    Some(QuotaViolation {
                        party,
                        seats,
                        bound: q.upper,
                        kind: ViolationKind::AboveUpper,
                    })
                } else {
                    None
                }
            })
            .collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    BelowLower,
    AboveUpper,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotaViolation {
    pub party: usize,
    pub seats: u64,
    /// The quota that was crossed.
    pub bound: u64,
    pub kind: ViolationKind,
}

pub fn compute_quotas(tally: &VoteTally, house_size: u64) -> Result<QuotaReport> {
    check_house(house_size)?;
    let total = tally.total_votes();
    let parties = tally
        .parties()
        .iter()
        .map(|p| {
            let scaled = house_size as u128 * p.votes as u128;
            let lower = scaled / total as u128;
            let upper = lower + u128::from(!scaled.is_multiple_of(total as u128));
            PartyQuota {
                ideal: Rational::new(scaled, total),
                lower: lower.to_u64().expect("lower quota bounded by house size"),
                upper: upper.to_u64().expect("upper quota bounded by house size"),
            }
        })
        .collect();
    let ideal_quota = (house_size > 0).then(|| Rational::new(total, house_size));
    Ok(QuotaReport {
        house_size,
        parties,
        ideal_quota,
    })
}
