//! Largest-remainder apportionment (Hare-Niemeyer), classical and sequential.

use serde::{Deserialize, Serialize};

use crate::allocation::{Allocation, Form, Method};
use crate::error::Result;
use crate::rational::Rational;
use crate::tally::{check_house, VoteTally};
use crate::tie::{TieEvent, TieKind, TiePolicy};

/// Lower quotas first, then one extra seat each to the largest residuals.
pub fn hare_niemeyer(tally: &VoteTally, house_size: u64, tie: TiePolicy) -> Result<Allocation> {
    check_house(house_size)?;
    let order = tie.order(tally);
    let total = tally.total_votes() as u128;
    let n = house_size as u128;

    let mut seats = Vec::with_capacity(tally.len());
    // residual numerators over the common denominator V
    let mut remainders = Vec::with_capacity(tally.len());
    for p in tally.parties() {
        let scaled = n * p.votes as u128;
        seats.push((scaled / total) as u64);
        remainders.push(scaled % total);
    }
    let remaining = house_size - seats.iter().sum::<u64>();
    let mut tie_events = Vec::new();

    if remaining > 0 {
        let mut by_residual: Vec<usize> = (0..tally.len()).collect();
        by_residual.sort_by(|&a, &b| {
            remainders[b]
                .cmp(&remainders[a])
                .then(order.rank(a).cmp(&order.rank(b)))
        });
        let cut = remaining as usize;
        debug_assert!(cut < by_residual.len());
        for &p in &by_residual[..cut] {
            seats[p] += 1;
        }
        let boundary = remainders[by_residual[cut - 1]];
        if remainders[by_residual[cut]] == boundary {
            let tied: Vec<usize> = by_residual
                .iter()
                .copied()
                .filter(|&p| remainders[p] == boundary)
                .collect();
            let awarded = by_residual[..cut]
                .iter()
                .copied()
                .filter(|&p| remainders[p] == boundary)
                .collect();
            tie_events.push(TieEvent {
                kind: TieKind::Residual,
                step: 0,
                value: Rational::new(boundary, total),
                tied,
                awarded,
            });
        }
    }

    Ok(Allocation {
        method: Method::Hare,
        form: Form::Divisor,
        house_size,
        seats,
        tie_events,
    })
}

/// One seat handed out by a sequential largest-deficit loop.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AwardEvent {
    /// 1-based.
    pub iteration: u64,
    pub party: usize,
    /// The winner's deficit `N f_i - n_i` just before the award.
    pub deficit: Rational,
}

/// Starts from zero seats and repeatedly awards a seat to the party with the
/// largest deficit `N f_i - n_i`.
pub fn sequential_hare(
    tally: &VoteTally,
    house_size: u64,
    tie: TiePolicy,
) -> Result<(Allocation, Vec<AwardEvent>)> {
    check_house(house_size)?;
    let seed = vec![0; tally.len()];
    let (seats, events, tie_events) =
        largest_deficit_run(tally, &seed, house_size, house_size, tie);
    Ok((
        Allocation {
            method: Method::Hare,
            form: Form::Sequential,
            house_size,
            seats,
            tie_events,
        },
        events,
    ))
}

/// Awards `rounds` seats on top of `start`, each to the largest deficit
/// `target_house * f_i - m_i`. Returns final seats, award log and ties.
pub(crate) fn largest_deficit_run(
    tally: &VoteTally,
    start: &[u64],
    target_house: u64,
    rounds: u64,
    tie: TiePolicy,
) -> (Vec<u64>, Vec<AwardEvent>, Vec<TieEvent>) {
    let order = tie.order(tally);
    let total = tally.total_votes() as i128;
    let mut seats = start.to_vec();
    // deficits scaled by V: N v_i - m_i V
    let mut scaled: Vec<i128> = tally
        .parties()
        .iter()
        .zip(&seats)
        .map(|(p, &m)| target_house as i128 * p.votes as i128 - m as i128 * total)
        .collect();
    let mut events = Vec::with_capacity(rounds as usize);
    let mut tie_events = Vec::new();

    for iteration in 1..=rounds {
        let winner = (0..seats.len())
            .max_by(|&a, &b| {
                scaled[a]
                    .cmp(&scaled[b])
                    .then(order.rank(b).cmp(&order.rank(a)))
            })
            .expect("tally is non-empty");
        let best = scaled[winner];
        let deficit = Rational::new(best, total);
        let mut tied: Vec<usize> = (0..seats.len()).filter(|&p| scaled[p] == best).collect();
        if tied.len() > 1 {
            order.sort(&mut tied);
            tie_events.push(TieEvent {
                kind: TieKind::Deficit,
                step: iteration,
                value: deficit.clone(),
                tied,
                awarded: vec![winner],
            });
        }
        seats[winner] += 1;
        scaled[winner] -= total;
        events.push(AwardEvent {
            iteration,
            party: winner,
            deficit,
        });
    }
    (seats, events, tie_events)
}
