use std::collections::BTreeMap;

use apportion::{
    compute_quotas, hare_niemeyer, highest_averages, multiplicative, seeded_divisor,
    seeded_sequential_hare, sequential_hare, Allocation, AwardEvent, DeficitRecord, DivisorRule,
    DivisorTrace, Form, Method, MultiplierStep, MultiplierTrace, QuotaReport, Rounding,
    SeedDistribution, SeededRun, TieEvent, VoteTally,
};
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Trace {
    /// Quota table of a highest-averages run.
    Divisor(DivisorTrace),
    Multiplier(MultiplierTrace),
    /// Seats awarded one at a time by largest deficit.
    Awards {
        events: Vec<AwardEvent>,
    },
    /// Deficits before every additional seat of a seeded run.
    Deficits {
        log: Vec<DeficitRecord>,
    },
    /// Multipliers visited by a seeded multiplier run.
    SeededMultiplier {
        steps: Vec<MultiplierStep>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub method: Method,
    pub form: Form,
    pub table: Trace,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledTie {
    pub method: Method,
    pub form: Form,
    pub event: TieEvent,
}

/// A party whose seats differ between methods in compare mode.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Difference {
    pub party: String,
    pub seats: BTreeMap<Method, u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub config: RunConfig,
    pub tally: VoteTally,
    pub allocations: Vec<Allocation>,
    pub quota_report: QuotaReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceEntry>>,
    pub tie_events: Vec<LabeledTie>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seeded_run: Option<SeededRun>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub differences: Option<Vec<Difference>>,
}

fn divisor_rule(m: Method) -> Option<(DivisorRule, Rounding)> {
    match m {
        Method::Hare => None,
        Method::Dhondt => Some((DivisorRule::Dhondt, Rounding::Floor)),
        Method::SainteLague => Some((DivisorRule::SainteLague, Rounding::SAINTE_LAGUE)),
    }
}

fn allocate(
    tally: &VoteTally,
    config: &RunConfig,
    method: Method,
    house_size: u64,
) -> Result<(Allocation, Option<Trace>)> {
    Ok(match (divisor_rule(method), config.form) {
        (None, Form::Sequential) => {
            let (a, events) = sequential_hare(tally, house_size, config.tie)?;
            (a, Some(Trace::Awards { events }))
        }
        (None, _) => (hare_niemeyer(tally, house_size, config.tie)?, None),
        (Some((_, rounding)), Form::Multiplicative) => {
            let (a, t) = multiplicative(tally, house_size, rounding, config.tie)?;
            (a, Some(Trace::Multiplier(t)))
        }
        (Some((rule, _)), _) => {
            let (a, t) = highest_averages(tally, house_size, rule, config.tie)?;
            (a, Some(Trace::Divisor(t)))
        }
    })
}

fn differences(tally: &VoteTally, allocations: &[Allocation]) -> Vec<Difference> {
    tally
        .ids()
        .enumerate()
        .filter(|&(i, _)| {
            allocations
                .iter()
                .any(|a| a.seats[i] != allocations[0].seats[i])
        })
        .map(|(i, id)| Difference {
            party: id.to_string(),
            seats: allocations.iter().map(|a| (a.method, a.seats[i])).collect(),
        })
        .collect()
}

fn seeded(tally: VoteTally, config: RunConfig) -> Result<Report> {
    let seed_config = config.seeded.as_ref().expect("seeded config");
    let method = config.method.expect("seeded runs have one method");
    let seed = SeedDistribution::new(
        &tally,
        seed_config.district_seats.clone(),
        seed_config.extra,
    )?;
    let run = match divisor_rule(method) {
        None => seeded_sequential_hare(&tally, &seed, config.tie)?,
        Some((_, rounding)) => {
            seeded_divisor(&tally, &seed, rounding, seed_config.stop, config.tie)?
        }
    };
    let house_size = run.totals.iter().sum();
    let allocation = Allocation {
        method,
        form: run.form,
        house_size,
        seats: run.totals.clone(),
        tie_events: run.tie_events.clone(),
    };
    let trace = config.trace.then(|| {
        let table = match method {
            Method::Hare => Trace::Deficits {
                log: run.deficit_log.clone(),
            },
            _ => Trace::SeededMultiplier {
                steps: run.multiplier_steps.clone(),
            },
        };
        vec![TraceEntry {
            method,
            form: run.form,
            table,
        }]
    });
    Ok(Report {
        quota_report: compute_quotas(&tally, house_size)?,
        tie_events: label_ties(std::slice::from_ref(&allocation)),
        allocations: vec![allocation],
        trace,
        seeded_run: Some(run),
        differences: None,
        tally,
        config,
    })
}

fn label_ties(allocations: &[Allocation]) -> Vec<LabeledTie> {
    allocations
        .iter()
        .flat_map(|a| {
            a.tie_events.iter().map(|e| LabeledTie {
                method: a.method,
                form: a.form,
                event: e.clone(),
            })
        })
        .collect()
}

/// Executes `config` on `tally`.
pub fn run(tally: VoteTally, config: RunConfig) -> Result<Report> {
    if config.seeded.is_some() {
        return seeded(tally, config);
    }
    let house_size = config.house_size.expect("plain runs have a house size");
    let mut allocations = Vec::new();
    let mut traces = Vec::new();
    for method in config.methods() {
        let (a, t) = allocate(&tally, &config, method, house_size)?;
        if let Some(table) = t {
            traces.push(TraceEntry {
                method,
                form: a.form,
                table,
            });
        }
        allocations.push(a);
    }
    Ok(Report {
        quota_report: compute_quotas(&tally, house_size)?,
        trace: config.trace.then_some(traces),
        tie_events: label_ties(&allocations),
        differences: config.compare.then(|| differences(&tally, &allocations)),
        allocations,
        seeded_run: None,
        tally,
        config,
    })
}
