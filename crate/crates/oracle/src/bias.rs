//! Seat bias between methods, grouped by vote rank.
//!
//! Parties are ranked by votes, largest first, ties by input position. For
//! every instance and rank the suite records d'Hondt seats minus Hare seats
//! and d'Hondt seats minus Sainte-Laguë seats.

use apportion::{apportion, Method};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::report::{SuiteKind, SuiteReport, Tally};
use crate::space::{Instance, InstanceSpace};
use crate::suite::{run_trials, Execution};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiasSample {
    /// Party indices, largest vote first.
    pub ranking: Vec<usize>,
    pub hare: Vec<u64>,
    pub dhondt: Vec<u64>,
    pub sainte_lague: Vec<u64>,
    /// By rank: d'Hondt minus Hare.
    pub dhondt_minus_hare: Vec<i64>,
    /// By rank: d'Hondt minus Sainte-Laguë.
    pub dhondt_minus_sainte_lague: Vec<i64>,
}

pub fn vote_ranking(votes: &[u64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..votes.len()).collect();
    idx.sort_by(|&a, &b| votes[b].cmp(&votes[a]).then(a.cmp(&b)));
    idx
}

pub fn bias_sample(instance: &Instance) -> Result<BiasSample> {
    let tally = instance.tally();
    let run = |m| apportion(&tally, instance.house_size, m, instance.tie).map(|a| a.seats);
    let hare = run(Method::Hare)?;
    let dhondt = run(Method::Dhondt)?;
    let sainte_lague = run(Method::SainteLague)?;
    let ranking = vote_ranking(&instance.votes);
    let delta = |other: &[u64]| -> Vec<i64> {
        ranking
            .iter()
            .map(|&i| dhondt[i] as i64 - other[i] as i64)
            .collect()
    };
    Ok(BiasSample {
        dhondt_minus_hare: delta(&hare),
        dhondt_minus_sainte_lague: delta(&sainte_lague),
        ranking,
        hare,
        dhondt,
        sainte_lague,
    })
}

/// Accumulates per-rank seat differences over every trial of `space`.
///
/// Statistic keys are `dhondt-minus-hare/rank-NN`,
/// `dhondt-minus-sainte-lague/rank-NN` and `largest-party-seats/<method>`.
pub fn bias_montecarlo(space: &InstanceSpace, exec: Execution) -> Result<SuiteReport> {
    space.validate()?;
    let samples = run_trials(space.trials, exec, |i| bias_sample(&space.trial(i)));
    let mut stats = Tally::default();
    for sample in samples {
        let s = sample?;
        for (rank, (h, sl)) in s
            .dhondt_minus_hare
            .iter()
            .zip(&s.dhondt_minus_sainte_lague)
            .enumerate()
        {
            stats.add(format!("dhondt-minus-hare/rank-{:02}", rank + 1), *h);
            stats.add(
                format!("dhondt-minus-sainte-lague/rank-{:02}", rank + 1),
                *sl,
            );
        }
        let top = s.ranking[0];
        for (m, seats) in [
            (Method::Hare, &s.hare),
            (Method::Dhondt, &s.dhondt),
            (Method::SainteLague, &s.sainte_lague),
        ] {
            stats.add(
                format!("largest-party-seats/{}", m.name()),
                seats[top] as i64,
            );
        }
    }
    Ok(SuiteReport {
        suite: SuiteKind::Bias,
        space: space.clone(),
        trials_run: space.trials,
        agreements: space.trials,
        disagreements: Vec::new(),
        witnesses: Vec::new(),
        statistics: stats.into_statistics(),
    })
}
