//! Instance spaces and how instances are drawn from them.
//!
//! Random trials: trial `i` uses a ChaCha8 generator keyed by the master seed
//! on stream `i`, so each trial is a pure function of `(master_seed, i)` and
//! trials can run in any order or in parallel. Within a trial the draws are,
//! in order: party count, house size, then every vote count uniformly from
//! the vote range (the vote vector is redrawn while it is all zero), then a
//! tie seed when the space uses seeded-random ties.
//!
//! Canonical scans (used by the pathology searches) visit party counts in
//! increasing order, then vote vectors in lexicographic order, then house
//! sizes in increasing order, and stop after `trials` instances.

use apportion::{TiePolicy, VoteTally, MAX_HOUSE};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{OracleError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieMode {
    Deterministic,
    SeededRandom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Range<T> {
    pub min: T,
    pub max: T,
}

impl<T: PartialOrd + Copy> Range<T> {
    pub fn new(min: T, max: T) -> Self {
        Range { min, max }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSpace {
    pub parties: Range<usize>,
    pub votes: Range<u64>,
    pub house: Range<u64>,
    pub trials: u64,
    pub master_seed: u64,
    pub tie: TieMode,
}

impl InstanceSpace {
    /// The space of the form-equivalence acceptance run.
    pub fn equivalence_default(trials: u64, master_seed: u64) -> Self {
        InstanceSpace {
            parties: Range::new(2, 8),
            votes: Range::new(0, 1_000_000),
            house: Range::new(1, 200),
            trials,
            master_seed,
            tie: TieMode::SeededRandom,
        }
    }

    /// A small space suited to exhaustive pathology scans.
    pub fn small_search(budget: u64) -> Self {
        InstanceSpace {
            parties: Range::new(2, 3),
            votes: Range::new(0, 12),
            house: Range::new(1, 15),
            trials: budget,
            master_seed: 0,
            tie: TieMode::Deterministic,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(OracleError::InvalidSpace(msg.to_string()));
        if self.parties.min == 0 || self.parties.min > self.parties.max {
            return bad("party range must be non-empty and start at 1 or more");
        }
        if self.votes.min > self.votes.max || self.votes.max == 0 {
            return bad("vote range must be non-empty and allow a positive count");
        }
        if self.house.min > self.house.max || self.house.max >= MAX_HOUSE {
            return bad("house range must be non-empty and within the supported maximum");
        }
        if self.parties.max as u64 > 64 {
            return bad("at most 64 parties");
        }
        Ok(())
    }

    /// Draws trial `index`. Pure in `(master_seed, index)`.
    pub fn trial(&self, index: u64) -> Instance {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(index);
        let k = rng.random_range(self.parties.min..=self.parties.max);
        let house_size = rng.random_range(self.house.min..=self.house.max);
        let votes = loop {
            let v: Vec<u64> = (0..k)
                .map(|_| rng.random_range(self.votes.min..=self.votes.max))
                .collect();
            if v.iter().any(|&x| x > 0) {
                break v;
            }
        };
        let tie = match self.tie {
            TieMode::Deterministic => TiePolicy::Deterministic,
            TieMode::SeededRandom => TiePolicy::SeededRandom {
                rng_seed: rng.random(),
            },
        };
        Instance {
            votes,
            house_size,
            tie,
        }
    }

    /// Instances in canonical scan order, at most `trials` of them.
    pub fn canonical(&self) -> impl Iterator<Item = Instance> + '_ {
        (self.parties.min..=self.parties.max)
            .flat_map(move |k| VoteOdometer::new(k, self.votes.min, self.votes.max))
            .filter(|v| v.iter().any(|&x| x > 0))
            .flat_map(move |votes| {
                (self.house.min..=self.house.max).map(move |house_size| Instance {
                    votes: votes.clone(),
                    house_size,
                    tie: TiePolicy::Deterministic,
                })
            })
            .take(self.trials as usize)
    }
}

/// A replayable problem instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub votes: Vec<u64>,
    pub house_size: u64,
    pub tie: TiePolicy,
}

impl Instance {
    pub fn new(votes: Vec<u64>, house_size: u64) -> Self {
        Instance {
            votes,
            house_size,
            tie: TiePolicy::Deterministic,
        }
    }

    pub fn tally(&self) -> VoteTally {
        VoteTally::from_votes(&self.votes).expect("instances always carry a positive vote")
    }
}

struct VoteOdometer {
    current: Option<Vec<u64>>,
    min: u64,
    max: u64,
}

impl VoteOdometer {
    fn new(k: usize, min: u64, max: u64) -> Self {
        VoteOdometer {
            current: Some(vec![min; k]),
            min,
            max,
        }
    }
}

impl Iterator for VoteOdometer {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        for i in (0..next.len()).rev() {
            if next[i] < self.max {
                next[i] += 1;
                self.current = Some(next);
                break;
            }
            next[i] = self.min;
        }
        Some(out)
    }
}
