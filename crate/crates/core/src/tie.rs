//! Tie resolution.
//!
//! Equal exact values are never perturbed numerically. Instead every run
//! derives a strict priority order over the parties from its [`TiePolicy`],
//! and whenever several parties tie, the highest-priority one wins. Removal
//! after an overshooting multiplier step walks the same order backwards.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::rational::Rational;
use crate::tally::VoteTally;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum TiePolicy {
    /// More votes first, then earlier input position.
    #[default]
    Deterministic,
    /// A pseudo-random permutation drawn from `rng_seed`.
    SeededRandom { rng_seed: u64 },
}

impl TiePolicy {
    pub fn order(&self, tally: &VoteTally) -> TieOrder {
        let n = tally.len();
        let mut ranking: Vec<usize> = (0..n).collect();
        match *self {
            TiePolicy::Deterministic => {
                ranking.sort_by(|&a, &b| tally.votes(b).cmp(&tally.votes(a)).then(a.cmp(&b)));
            }
            TiePolicy::SeededRandom { rng_seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
                ranking.shuffle(&mut rng);
                // zero-vote parties never win a tie
                ranking.sort_by_key(|&p| tally.votes(p) == 0);
            }
        }
        let mut rank = vec![0usize; n];
        for (r, &p) in ranking.iter().enumerate() {
            rank[p] = r;
        }
        TieOrder { rank }
    }
}

/// Strict priority over parties; rank 0 is preferred.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TieOrder {
    rank: Vec<usize>,
}

impl TieOrder {
    pub fn rank(&self, party: usize) -> usize {
        self.rank[party]
    }

    /// True if `a` is preferred over `b`.
    pub fn prefers(&self, a: usize, b: usize) -> bool {
        self.rank[a] < self.rank[b]
    }

    /// Parties from most to least preferred.
    pub fn ranking(&self) -> Vec<usize> {
        let mut parties: Vec<usize> = (0..self.rank.len()).collect();
        parties.sort_by_key(|&p| self.rank[p]);
        parties
    }

    /// Sorts `parties` from most to least preferred.
    pub fn sort(&self, parties: &mut [usize]) {
        parties.sort_by_key(|&p| self.rank[p]);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieKind {
    /// Equal highest bids in a divisor table step.
    Bid,
    /// Equal residuals straddling the last remaining seats.
    Residual,
    /// Equal largest deficits in a sequential step.
    Deficit,
    /// Simultaneous threshold crossings at the deciding multiplier; seats
    /// beyond the target are de-assigned in reverse priority.
    Threshold,
}

/// One resolved tie. `tied` lists every party sharing `value`, in priority
/// order; `awarded` lists the ones that received the contested seat(s).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TieEvent {
    pub kind: TieKind,
    pub step: u64,
    pub value: Rational,
    pub tied: Vec<usize>,
    pub awarded: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_prefers_votes_then_position() {
        let t = VoteTally::from_votes(&[10, 30, 30, 0, 5]).unwrap();
        let order = TiePolicy::Deterministic.order(&t);
        assert_eq!(order.ranking(), vec![1, 2, 0, 4, 3]);
        assert!(order.prefers(1, 2));
    }

    #[test]
    fn seeded_random_is_reproducible_and_keeps_zero_votes_last() {
        let t = VoteTally::from_votes(&[0, 7, 7, 7, 7, 7, 7, 7]).unwrap();
        let a = TiePolicy::SeededRandom { rng_seed: 42 }.order(&t);
        let b = TiePolicy::SeededRandom { rng_seed: 42 }.order(&t);
        assert_eq!(a, b);
        assert_eq!(*a.ranking().last().unwrap(), 0);
        let differs = (0..20u64)
            .map(|s| TiePolicy::SeededRandom { rng_seed: s }.order(&t).ranking())
            .collect::<std::collections::HashSet<_>>();
        assert!(differs.len() > 1);
    }
}
