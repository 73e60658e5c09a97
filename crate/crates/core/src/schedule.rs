//! Threshold schedules for multiplier-based allocation.
//!
//! With rounding threshold `t` (a fractional part `>= t` rounds up) and a
//! per-party seat offset `o_i`, party `i` holds its `s`-th seat exactly when
//! the multiplier reaches
//!
//! ```text
//! M_{i,s} = (o_i + s - 1 + t) * V / v_i
//! ```
//!
//! The plain multiplicative form uses `o_i = 0`; the district-seeded form
//! uses the district seats. Parties with no votes have no thresholds.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{ApportionError, Result, MAX_THRESHOLD_DENOMINATOR};
use crate::rational::{cmp_fractions, Rational};
use crate::tie::{TieEvent, TieKind, TieOrder};

/// How a multiplier product `M f_i` becomes a seat count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Rounding {
    /// Truncate.
    Floor,
    /// Round up once the fractional part reaches `num / den`.
    Nearest { num: u64, den: u64 },
}

impl Rounding {
    /// Nearest-integer rounding with the usual one-half threshold.
    pub const SAINTE_LAGUE: Rounding = Rounding::Nearest { num: 1, den: 2 };

    pub fn nearest(threshold: &Rational) -> Result<Rounding> {
        let bad = || ApportionError::InvalidThreshold(threshold.to_string());
        let num = threshold.numer().to_u64().ok_or_else(bad)?;
        let den = threshold.denom().to_u64().ok_or_else(bad)?;
        let r = Rounding::Nearest { num, den };
        r.validate()?;
        Ok(r)
    }

    pub(crate) fn validate(self) -> Result<()> {
        if let Rounding::Nearest { num, den } = self {
            if num == 0 || den == 0 || num > den || den > MAX_THRESHOLD_DENOMINATOR {
                return Err(ApportionError::InvalidThreshold(format!("{num}/{den}")));
            }
        }
        Ok(())
    }

    /// The threshold as a pair; floor is threshold one.
    pub fn threshold_parts(self) -> (u64, u64) {
        match self {
            Rounding::Floor => (1, 1),
            Rounding::Nearest { num, den } => (num, den),
        }
    }

    pub fn threshold(self) -> Rational {
        let (p, q) = self.threshold_parts();
        Rational::new(p, q)
    }

    /// `floor(x + 1 - t)`.
    pub fn round(self, x: &Rational) -> BigInt {
        let shift = &Rational::one() - &self.threshold();
        (x + &shift).floor()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplierStep {
    pub multiplier: Rational,
    pub seats: Vec<u64>,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Schedule<'a> {
    votes: &'a [u64],
    total: u64,
    offsets: &'a [u64],
    t_num: u64,
    t_den: u64,
}

/// Outcome of a multiplier search: seats, the deciding multiplier and the
/// boundary tie, if one was resolved.
pub(crate) struct Outcome {
    pub seats: Vec<u64>,
    pub witness: Rational,
    pub steps: Vec<MultiplierStep>,
    pub tie: Option<TieEvent>,
}

impl<'a> Schedule<'a> {
    pub fn new(votes: &'a [u64], total: u64, offsets: &'a [u64], rounding: Rounding) -> Self {
        let (t_num, t_den) = rounding.threshold_parts();
        Schedule {
            votes,
            total,
            offsets,
            t_num,
            t_den,
        }
    }

    fn parties(&self) -> usize {
        self.votes.len()
    }

    /// `(o_i + s - 1) q + p`, the threshold numerator over `q v_i / V`.
    fn key(&self, party: usize, seat: u64) -> u128 {
        debug_assert!(seat >= 1);
        (self.offsets[party] + seat - 1) as u128 * self.t_den as u128 + self.t_num as u128
    }

    fn cmp(&self, a: (usize, u64), b: (usize, u64)) -> Ordering {
        cmp_fractions(
            self.key(a.0, a.1),
            self.votes[a.0] as u128,
            self.key(b.0, b.1),
            self.votes[b.0] as u128,
        )
    }

    /// Exact multiplier at which `party` gains seat number `seat`.
    pub fn value(&self, party: usize, seat: u64) -> Rational {
        Rational::new(
            self.key(party, seat) * self.total as u128,
            self.t_den as u128 * self.votes[party] as u128,
        )
    }

    /// Seats party `party` holds at multiplier `m`: `max(0, R(M f_i - o_i))`.
    pub fn count(&self, party: usize, m: &Rational) -> u64 {
        if self.votes[party] == 0 {
            return 0;
        }
        let share = Rational::new(self.votes[party], self.total);
        let x = &(m * &share) - &Rational::from(self.offsets[party]);
        let shift = &Rational::one() - &Rational::new(self.t_num, self.t_den);
        let n = (&x + &shift).floor();
        if n.sign() == num_bigint::Sign::Minus {
            0
        } else {
            n.to_u64().expect("seat count fits in u64")
        }
    }

    pub fn counts(&self, m: &Rational) -> Vec<u64> {
        (0..self.parties()).map(|p| self.count(p, m)).collect()
    }

    /// Smallest threshold strictly above the state `seats`.
    pub fn next_event(&self, seats: &[u64]) -> Rational {
        (0..self.parties())
            .filter(|&p| self.votes[p] > 0)
            .min_by(|&a, &b| self.cmp((a, seats[a] + 1), (b, seats[b] + 1)))
            .map(|p| self.value(p, seats[p] + 1))
            .expect("some party has votes")
    }

    /// Largest threshold already passed in state `seats`, if any.
    pub fn last_event(&self, seats: &[u64]) -> Option<Rational> {
        (0..self.parties())
            .filter(|&p| seats[p] > 0)
            .max_by(|&a, &b| self.cmp((a, seats[a]), (b, seats[b])))
            .map(|p| self.value(p, seats[p]))
    }

    /// Picks the `target` smallest thresholds in (value, priority) order.
    ///
    /// Returns the seats, the award sequence with the multiplier of each award,
    /// and the tie straddling the last awarded threshold, if any.
    pub fn select(&self, target: u64, order: &TieOrder) -> Outcome {
        struct Entry {
            key: u128,
            votes: u64,
            rank: usize,
            party: usize,
            seat: u64,
        }
        impl Ord for Entry {
            // reversed: BinaryHeap pops the smallest threshold first
            fn cmp(&self, other: &Self) -> Ordering {
                cmp_fractions(other.key, other.votes as u128, self.key, self.votes as u128)
                    .then(other.rank.cmp(&self.rank))
            }
        }
        impl PartialEq for Entry {
            fn eq(&self, other: &Self) -> bool {
                self.cmp(other).is_eq()
            }
        }
        impl Eq for Entry {}
        impl PartialOrd for Entry {
            fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
                Some(self.cmp(other))
            }
        }
        let entry = |party: usize, seat: u64| Entry {
            key: self.key(party, seat),
            votes: self.votes[party],
            rank: order.rank(party),
            party,
            seat,
        };

        let mut heap: BinaryHeap<Entry> = (0..self.parties())
            .filter(|&p| self.votes[p] > 0)
            .map(|p| entry(p, 1))
            .collect();
        let mut seats = vec![0u64; self.parties()];
        let mut steps = Vec::with_capacity(target as usize);
        let mut awarded: Vec<(usize, u64)> = Vec::with_capacity(target as usize);
        for _ in 0..target {
            let e = heap
                .pop()
                .expect("every positive party has unbounded thresholds");
            seats[e.party] += 1;
            steps.push(MultiplierStep {
                multiplier: self.value(e.party, e.seat),
                seats: seats.clone(),
            });
            awarded.push((e.party, e.seat));
            heap.push(entry(e.party, e.seat + 1));
        }

        let Some(&last) = awarded.last() else {
            return Outcome {
                seats,
                witness: Rational::zero(),
                steps,
                tie: None,
            };
        };
        let witness = self.value(last.0, last.1);
        let in_group: Vec<usize> = awarded
            .iter()
            .rev()
            .take_while(|&&a| self.cmp(a, last).is_eq())
            .map(|a| a.0)
            .collect();
        let mut left_out = Vec::new();
        while let Some(e) = heap.peek() {
            if self.cmp((e.party, e.seat), last).is_eq() {
                left_out.push(e.party);
                heap.pop();
            } else {
                break;
            }
        }
        let tie = (!left_out.is_empty()).then(|| {
            let mut tied: Vec<usize> = in_group.iter().chain(&left_out).copied().collect();
            order.sort(&mut tied);
            let mut got = in_group.clone();
            order.sort(&mut got);
            TieEvent {
                kind: TieKind::Threshold,
                step: target,
                value: witness.clone(),
                tied,
                awarded: got,
            }
        });
        Outcome {
            seats,
            witness,
            steps,
            tie,
        }
    }

    /// Moves a multiplier event by event from `start` until `target` seats are
    /// held, stepping up when short and down when over. If a single event
    /// overshoots, the surplus seats at that event are de-assigned from the
    /// lowest-priority parties that crossed it.
    pub fn sweep(&self, start: Rational, target: u64, order: &TieOrder) -> Outcome {
        let mut m = start;
        let mut steps = Vec::new();
        loop {
            let seats = self.counts(&m);
            let total: u64 = seats.iter().sum();
            steps.push(MultiplierStep {
                multiplier: m.clone(),
                seats: seats.clone(),
            });
            match total.cmp(&target) {
                Ordering::Equal => {
                    return Outcome {
                        seats,
                        witness: m,
                        steps,
                        tie: None,
                    }
                }
                Ordering::Less => {
                    let e = self.next_event(&seats);
                    let at_e = self.counts(&e);
                    if at_e.iter().sum::<u64>() <= target {
                        m = e;
                        continue;
                    }
                    steps.push(MultiplierStep {
                        multiplier: e.clone(),
                        seats: at_e.clone(),
                    });
                    let crossing: Vec<usize> = (0..self.parties())
                        .filter(|&p| at_e[p] > seats[p])
                        .collect();
                    return self.deassign(at_e, crossing, e, target, order, steps);
                }
                Ordering::Greater => {
                    let e = self.last_event(&seats).expect("over target implies seats");
                    let crossing: Vec<usize> = (0..self.parties())
                        .filter(|&p| seats[p] > 0 && self.value(p, seats[p]) == e)
                        .collect();
                    let below: Vec<u64> = (0..self.parties())
                        .map(|p| seats[p] - u64::from(crossing.contains(&p)))
                        .collect();
                    if below.iter().sum::<u64>() >= target {
                        let prev = self.last_event(&below).unwrap_or_else(Rational::zero);
                        m = prev.midpoint(&e);
                        continue;
                    }
                    if m != e {
                        steps.push(MultiplierStep {
                            multiplier: e.clone(),
                            seats: seats.clone(),
                        });
                    }
                    return self.deassign(seats, crossing, e, target, order, steps);
                }
            }
        }
    }

    fn deassign(
        &self,
        mut seats: Vec<u64>,
        mut crossing: Vec<usize>,
        at: Rational,
        target: u64,
        order: &TieOrder,
        steps: Vec<MultiplierStep>,
    ) -> Outcome {
        let total: u64 = seats.iter().sum();
        let excess = (total - target) as usize;
        order.sort(&mut crossing);
        debug_assert!(excess < crossing.len());
        let keep = crossing.len() - excess;
        for &p in &crossing[keep..] {
            seats[p] -= 1;
        }
        let tie = TieEvent {
            kind: TieKind::Threshold,
            step: target,
            value: at.clone(),
            tied: crossing.clone(),
            awarded: crossing[..keep].to_vec(),
        };
        Outcome {
            seats,
            witness: at,
            steps,
            tie: Some(tie),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tally::VoteTally;
    use crate::tie::TiePolicy;

    #[test]
    fn rounding_rules() {
        let x = Rational::new(76, 10);
        assert_eq!(Rounding::SAINTE_LAGUE.round(&x), BigInt::from(8));
        assert_eq!(
            Rounding::SAINTE_LAGUE.round(&Rational::new(73, 10)),
            BigInt::from(7)
        );
        assert_eq!(
            Rounding::SAINTE_LAGUE.round(&Rational::new(5, 2)),
            BigInt::from(3)
        );
        assert_eq!(Rounding::Floor.round(&x), BigInt::from(7));
        let t = Rounding::Nearest { num: 7, den: 10 };
        assert_eq!(t.round(&Rational::new(169, 100)), BigInt::from(1));
        assert_eq!(t.round(&Rational::new(17, 10)), BigInt::from(2));
        assert_eq!(
            Rounding::Nearest { num: 1, den: 1 }.round(&x),
            BigInt::from(7)
        );
    }

    #[test]
    fn threshold_validation() {
        assert!(Rounding::nearest(&Rational::new(1, 2)).is_ok());
        assert!(Rounding::nearest(&Rational::one()).is_ok());
        assert!(Rounding::nearest(&Rational::zero()).is_err());
        assert!(Rounding::nearest(&Rational::new(3, 2)).is_err());
        assert!(Rounding::nearest(&Rational::new(1, 3_000_000)).is_err());
    }

    #[test]
    fn counts_match_threshold_values() {
        let votes = [53, 24, 23];
        let offsets = [0, 0, 0];
        let s = Schedule::new(&votes, 100, &offsets, Rounding::Floor);
        for p in 0..3 {
            for seat in 1..6 {
                let m = s.value(p, seat);
                assert_eq!(s.count(p, &m), seat);
                let below = &m - &Rational::new(1, 1000);
                assert_eq!(s.count(p, &below), seat - 1);
            }
        }
    }

    #[test]
    fn boundary_tie_is_deassigned_by_priority() {
        let votes = [5, 5, 2];
        let offsets = [0, 0, 0];
        let t = VoteTally::from_votes(&votes).unwrap();
        let order = TiePolicy::Deterministic.order(&t);
        let s = Schedule::new(&votes, 12, &offsets, Rounding::Floor);
        let sel = s.select(1, &order);
        assert_eq!(sel.seats, vec![1, 0, 0]);
        let tie = sel.tie.unwrap();
        assert_eq!(tie.tied, vec![0, 1]);
        assert_eq!(tie.awarded, vec![0]);
        let sw = s.sweep(Rational::from(1u64), 1, &order);
        assert_eq!(sw.seats, vec![1, 0, 0]);
        assert_eq!(sw.tie.unwrap().awarded, vec![0]);
    }
}
