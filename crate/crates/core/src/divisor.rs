//! Highest-averages apportionment simulated as a quota table.
//!
//! Each step compares every party's "next quota" bid `v_i / d(n_i)` and gives
//! the seat to the largest. Bids are compared by integer cross-multiplication.

use serde::{Deserialize, Serialize};

use crate::allocation::{Allocation, Form, Method};
use crate::error::Result;
use crate::rational::{cmp_fractions, Rational};
use crate::tally::{check_house, VoteTally};
use crate::tie::{TieEvent, TieKind, TiePolicy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DivisorRule {
    /// Divisors 1, 2, 3, ...
    Dhondt,
    /// Divisors 1, 3, 5, ...
    SainteLague,
}

impl DivisorRule {
    /// Divisor applied to the bid for a party already holding `seats`.
    pub fn divisor(self, seats: u64) -> u64 {
        match self {
            DivisorRule::Dhondt => seats + 1,
            DivisorRule::SainteLague => 2 * seats + 1,
        }
    }

    pub fn method(self) -> Method {
        match self {
            DivisorRule::Dhondt => Method::Dhondt,
            DivisorRule::SainteLague => Method::SainteLague,
        }
    }
}

/// One row pair of the quota table, as it stood when the step was decided.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorStep {
    /// 1-based.
    pub step: u64,
    /// Seats held before this step.
    pub seats: Vec<u64>,
    /// Votes paid per seat so far; `None` while a party holds no seat.
    pub present: Vec<Option<Rational>>,
    /// Bid for one more seat.
    pub next: Vec<Rational>,
    pub winner: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorTrace {
    pub rule: DivisorRule,
    pub steps: Vec<DivisorStep>,
}

impl DivisorTrace {
    /// The bid that won the final seat: the quota `q` paid in the last step.
    pub fn final_quota(&self) -> Option<&Rational> {
        self.steps.last().map(|s| &s.next[s.winner])
    }
}

pub fn highest_averages(
    tally: &VoteTally,
    house_size: u64,
    rule: DivisorRule,
    tie: TiePolicy,
) -> Result<(Allocation, DivisorTrace)> {
    check_house(house_size)?;
    let order = tie.order(tally);
    let k = tally.len();
    let votes = tally.vote_vector();
    let mut seats = vec![0u64; k];
    let mut present: Vec<Option<Rational>> = vec![None; k];
    let mut next: Vec<Rational> = votes.iter().map(|&v| Rational::from(v)).collect();
    let mut steps = Vec::with_capacity(house_size as usize);
    let mut tie_events = Vec::new();

    let cmp_bid = |a: usize, b: usize, seats: &[u64]| {
        cmp_fractions(
            votes[a] as u128,
            rule.divisor(seats[a]) as u128,
            votes[b] as u128,
            rule.divisor(seats[b]) as u128,
        )
    };

    for step in 1..=house_size {
        let winner = (0..k)
            .max_by(|&a, &b| cmp_bid(a, b, &seats).then(order.rank(b).cmp(&order.rank(a))))
            .expect("tally is non-empty");
        let mut tied: Vec<usize> = (0..k)
            .filter(|&p| cmp_bid(p, winner, &seats).is_eq())
            .collect();
        if tied.len() > 1 {
            order.sort(&mut tied);
            tie_events.push(TieEvent {
                kind: TieKind::Bid,
                step,
                value: next[winner].clone(),
                tied,
                awarded: vec![winner],
            });
        }
        steps.push(DivisorStep {
            step,
            seats: seats.clone(),
            present: present.clone(),
            next: next.clone(),
            winner,
        });
        seats[winner] += 1;
        present[winner] = Some(std::mem::replace(
            &mut next[winner],
            Rational::new(votes[winner], rule.divisor(seats[winner])),
        ));
    }

    Ok((
        Allocation {
            method: rule.method(),
            form: Form::Divisor,
            house_size,
            seats,
            tie_events,
        },
        DivisorTrace { rule, steps },
    ))
}
