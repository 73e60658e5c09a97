//! Form-equivalence suite.

use std::collections::BTreeSet;

use apportion::{
    hare_niemeyer, highest_averages, multiplicative_with, sequential_hare, DivisorRule, Engine,
    Method, Rounding,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::brute::check_quota_property;
use crate::error::Result;
use crate::report::{Check, Disagreement, Failure, SuiteKind, SuiteReport, Tally, Witness};
use crate::search::{monotonicity_at, quota_violation_at};
use crate::space::{Instance, InstanceSpace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Execution {
    #[default]
    Serial,
    Parallel,
}

/// Maps `f` over trial indices, returning results in index order regardless
/// of how they were scheduled.
pub(crate) fn run_trials<T, F>(trials: u64, exec: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    match exec {
        Execution::Serial => (0..trials).map(f).collect(),
        Execution::Parallel => (0..trials).into_par_iter().map(f).collect(),
    }
}

/// Result of checking one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialOutcome {
    pub failures: Vec<Failure>,
    pub hare_within_quota: bool,
    pub any_tie: bool,
}

/// Runs every form of every method on `instance` under its tie policy and
/// compares them pairwise.
pub fn check_equivalence(instance: &Instance) -> Result<TrialOutcome> {
    let tally = instance.tally();
    let n = instance.house_size;
    let tie = instance.tie;
    let mut failures = Vec::new();
    let mut any_tie = false;

    for (rule, rounding, checks) in [
        (
            DivisorRule::Dhondt,
            Rounding::Floor,
            [Check::DhondtThreshold, Check::DhondtSweep],
        ),
        (
            DivisorRule::SainteLague,
            Rounding::SAINTE_LAGUE,
            [Check::SainteLagueThreshold, Check::SainteLagueSweep],
        ),
    ] {
        let (table, _) = highest_averages(&tally, n, rule, tie)?;
        any_tie |= !table.tie_events.is_empty();
        for (engine, check) in [Engine::Threshold, Engine::Sweep].into_iter().zip(checks) {
            let (mult, _) = multiplicative_with(&tally, n, rounding, tie, engine)?;
            if mult.seats != table.seats {
                failures.push(Failure {
                    check,
                    expected: table.seats.clone(),
                    actual: mult.seats,
                });
            }
        }
    }

    let hare = hare_niemeyer(&tally, n, tie)?;
    any_tie |= !hare.tie_events.is_empty();
    let (seq, _) = sequential_hare(&tally, n, tie)?;
    if seq.seats != hare.seats {
        failures.push(Failure {
            check: Check::SequentialHare,
            expected: hare.seats.clone(),
            actual: seq.seats,
        });
    }
    let quota = check_quota_property(&tally, n, &hare.seats)?;
    if !quota.holds {
        let lower = apportion::compute_quotas(&tally, n)?
            .parties
            .iter()
            .map(|q| q.lower)
            .collect();
        failures.push(Failure {
            check: Check::HareQuota,
            expected: lower,
            actual: hare.seats.clone(),
        });
    }

    Ok(TrialOutcome {
        failures,
        hare_within_quota: quota.holds,
        any_tie,
    })
}

/// Checks form equivalence on every trial of `space`.
pub fn equivalence_suite(space: &InstanceSpace, exec: Execution) -> Result<SuiteReport> {
    space.validate()?;
    let outcomes = run_trials(space.trials, exec, |i| {
        let instance = space.trial(i);
        check_equivalence(&instance).map(|o| (instance, o))
    });

    let mut agreements = 0;
    let mut disagreements = Vec::new();
    let mut stats = Tally::default();
    for (trial, outcome) in outcomes.into_iter().enumerate() {
        let (instance, o) = outcome?;
        stats.add("hare-within-quota", i64::from(o.hare_within_quota));
        stats.add("instances-with-ties", i64::from(o.any_tie));
        if o.failures.is_empty() {
            agreements += 1;
        } else {
            disagreements.push(Disagreement {
                trial: trial as u64,
                instance,
                failures: o.failures,
            });
        }
    }
    Ok(SuiteReport {
        suite: SuiteKind::Equivalence,
        space: space.clone(),
        trials_run: space.trials,
        agreements,
        disagreements,
        witnesses: Vec::new(),
        statistics: stats.into_statistics(),
    })
}

/// Scans `space` in canonical order for house-monotonicity and quota
/// failures of every method. Each failing instance counts as a disagreement;
/// the first witness of each kind per method is kept.
pub fn paradox_suite(space: &InstanceSpace) -> Result<SuiteReport> {
    space.validate()?;
    let mut agreements = 0;
    let mut trials_run = 0;
    let mut disagreements = Vec::new();
    let mut witnesses = Vec::new();
    let mut seen = BTreeSet::new();
    let mut stats = Tally::default();
    for (trial, instance) in space.canonical().enumerate() {
        trials_run += 1;
        let mut failures = Vec::new();
        for method in Method::ALL {
            let mono = monotonicity_at(&instance, method)?;
            stats.add(
                format!("house-monotonicity/{}", method.name()),
                i64::from(mono.is_some()),
            );
            if let Some(w) = mono {
                let check = Check::HouseMonotonicity(method);
                failures.push(Failure {
                    check,
                    expected: w.seats_before.clone(),
                    actual: w.seats_after.clone(),
                });
                if seen.insert(check) {
                    witnesses.push(Witness::HouseMonotonicity(w));
                }
            }
            let quota = quota_violation_at(&instance, method)?;
            stats.add(
                format!("quota-violation/{}", method.name()),
                i64::from(quota.is_some()),
            );
            if let Some(w) = quota {
                let check = Check::QuotaProperty(method);
                let lower = apportion::compute_quotas(&instance.tally(), instance.house_size)?
                    .parties
                    .iter()
                    .map(|q| q.lower)
                    .collect();
                failures.push(Failure {
                    check,
                    expected: lower,
                    actual: w.seats.clone(),
                });
                if seen.insert(check) {
                    witnesses.push(Witness::QuotaViolation(w));
                }
            }
        }
        if failures.is_empty() {
            agreements += 1;
        } else {
            disagreements.push(Disagreement {
                trial: trial as u64,
                instance,
                failures,
            });
        }
    }
    Ok(SuiteReport {
        suite: SuiteKind::Paradox,
        space: space.clone(),
        trials_run,
        agreements,
        disagreements,
        witnesses,
        statistics: stats.into_statistics(),
    })
}

/// Re-runs the checks of a reported disagreement.
pub fn replay(disagreement: &Disagreement) -> Result<bool> {
    let o = check_equivalence(&disagreement.instance)?;
    Ok(o.failures == disagreement.failures)
}
