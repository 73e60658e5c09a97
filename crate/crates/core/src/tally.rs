use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{ApportionError, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Party {
    pub id: String,
    pub votes: u64,
}

/// Validated vote counts, in input order.
///
/// Vote shares are kept as integer pairs `v_i / V`; [`VoteTally::fraction`]
/// materializes one as an exact [`Rational`] when a caller needs it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VoteTally {
    parties: Vec<Party>,
    total: u64,
}

impl VoteTally {
    pub fn new(parties: Vec<Party>) -> Result<Self> {
        if parties.is_empty() {
            return Err(ApportionError::EmptyTally);
        }
        let mut seen = HashSet::with_capacity(parties.len());
        for p in &parties {
            if !seen.insert(p.id.as_str()) {
                return Err(ApportionError::DuplicateParty(p.id.clone()));
            }
        }
        let total = parties
            .iter()
            .try_fold(0u64, |acc, p| acc.checked_add(p.votes))
            .ok_or(ApportionError::VoteOverflow)?;
        if total == 0 {
            return Err(ApportionError::NoPositiveVotes);
        }
        Ok(VoteTally { parties, total })
    }

    /// Tally with generated ids `P1`, `P2`, ...
    pub fn from_votes(votes: &[u64]) -> Result<Self> {
        Self::new(
            votes
                .iter()
                .enumerate()
                .map(|(i, &v)| Party {
                    id: format!("P{}", i + 1),
                    votes: v,
                })
                .collect(),
        )
    }

    pub fn parties(&self) -> &[Party] {
        &self.parties
    }

    pub fn len(&self) -> usize {
        self.parties.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parties.is_empty()
    }

    pub fn total_votes(&self) -> u64 {
        self.total
    }

    pub fn votes(&self, party: usize) -> u64 {
        self.parties[party].votes
    }

    pub fn vote_vector(&self) -> Vec<u64> {
        self.parties.iter().map(|p| p.votes).collect()
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.parties.iter().map(|p| p.id.as_str())
    }

    /// Exact vote share `v_i / V`.
    pub fn fraction(&self, party: usize) -> Rational {
        Rational::new(self.parties[party].votes, self.total)
    }

    /// Same parties with every vote count multiplied by `factor`.
    pub fn scaled(&self, factor: u64) -> Result<Self> {
        let parties = self
            .parties
            .iter()
            .map(|p| {
                p.votes
                    .checked_mul(factor)
                    .map(|votes| Party {
                        id: p.id.clone(),
                        votes,
                    })
                    .ok_or(ApportionError::VoteOverflow)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parties)
    }
}

impl<'de> Deserialize<'de> for VoteTally {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            parties: Vec<Party>,
        }
        let raw = Raw::deserialize(deserializer)?;
        VoteTally::new(raw.parties).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn check_house(house_size: u64) -> Result<()> {
    if house_size > crate::error::MAX_HOUSE {
        return Err(ApportionError::HouseTooLarge(house_size));
    }
    Ok(())
}
