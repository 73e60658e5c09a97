//! Two-stage apportionment: district seats `d_i` are fixed, and additional
//! seats are added on top to approach proportionality.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::allocation::{Form, Method};
use crate::error::{ApportionError, Result, MAX_HOUSE};
use crate::rational::Rational;
use crate::schedule::{MultiplierStep, Rounding, Schedule};
use crate::tally::{check_house, VoteTally};
use crate::tie::{TieEvent, TieKind, TieOrder, TiePolicy};

/// Limit on the additional seats a sequential seeded run may add.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", content = "seats", rename_all = "kebab-case")]
pub enum ExtraSeats {
    /// Run until every residual is below one in absolute value.
    #[default]
    Open,
    /// As `Open`, but stop after at most this many additional seats.
    Cap(u64),
    /// Exactly this many additional seats, targeting house `D + T`.
    Fixed(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedDistribution {
    district_seats: Vec<u64>,
    total: u64,
    pub extra: ExtraSeats,
}

impl SeedDistribution {
    pub fn new(tally: &VoteTally, district_seats: Vec<u64>, extra: ExtraSeats) -> Result<Self> {
        if district_seats.len() != tally.len() {
            return Err(ApportionError::SeedLengthMismatch {
                expected: tally.len(),
                given: district_seats.len(),
            });
        }
        let total = district_seats
            .iter()
            .try_fold(0u64, |acc, &d| acc.checked_add(d))
            .filter(|&t| t <= MAX_HOUSE)
            .ok_or(ApportionError::HouseTooLarge(u64::MAX))?;
        Ok(SeedDistribution {
            district_seats,
            total,
            extra,
        })
    }

    pub fn district_seats(&self) -> &[u64] {
        &self.district_seats
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    fn check(&self, tally: &VoteTally) -> Result<()> {
        if self.district_seats.len() != tally.len() {
            return Err(ApportionError::SeedLengthMismatch {
                expected: tally.len(),
                given: self.district_seats.len(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StopReason {
    AllResidualsBelowOne,
    CapReached,
    FixedExtraExhausted,
    /// The fixed target was reached only after de-assigning seats from
    /// parties that crossed the deciding multiplier together.
    FixedExtraDeassigned,
}

/// Stop rule for the seeded multiplier search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "seats", rename_all = "kebab-case")]
pub enum DivisorStop {
    Residual,
    Fixed(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeficitRecord {
    /// 1-based.
    pub iteration: u64,
    /// House size the deficits are measured against.
    pub house: u64,
    /// `f_i * house - m_i` for every party, before the award.
    pub deficits: Vec<Rational>,
    pub awarded: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeededRun {
    pub method: Method,
    pub form: Form,
    pub district_seats: Vec<u64>,
    pub extra_seats: Vec<u64>,
    /// `m_i = d_i + n_i`.
    pub totals: Vec<u64>,
    /// Additional seats awarded, `J`.
    pub iterations: u64,
    pub stop_reason: StopReason,
    pub deficit_log: Vec<DeficitRecord>,
    /// Deciding multiplier of a seeded multiplier search.
    pub multiplier: Option<Rational>,
    pub multiplier_steps: Vec<MultiplierStep>,
    pub tie_events: Vec<TieEvent>,
}

/// Upper bound on the additional seats an open sequential run can need.
///
/// Past house `H0 = max ceil(d_i V / v_i)` no party is over-represented, so
/// the remaining work is bounded by the number of parties.
pub fn residual_stop_bound(tally: &VoteTally, seed: &SeedDistribution) -> Result<u64> {
    seed.check(tally)?;
    let total = tally.total_votes() as u128;
    let mut h0: u128 = 0;
    for (p, &d) in tally.parties().iter().zip(&seed.district_seats) {
        if p.votes == 0 {
            if d > 0 {
                return Err(ApportionError::UnreachableResidualStop(p.id.clone()));
            }
            continue;
        }
        h0 = h0.max((d as u128 * total).div_ceil(p.votes as u128));
    }
    let k = tally.len() as u128;
    let bound = h0.saturating_sub(seed.total as u128) + k;
    u64::try_from(bound)
        .ok()
        .filter(|&b| b <= MAX_HOUSE)
        .ok_or(ApportionError::ResidualStopTooFar(
            u64::try_from(bound).unwrap_or(u64::MAX),
        ))
}

/// Sequential largest-deficit top-up.
///
/// Iteration `j` measures deficits `f_i (D + j) - m_i` (or against the fixed
/// house `D + T`) and gives one seat to the largest. The open rule stops at
/// the first `J` with every `|f_i (D + J) - m_i| < 1`.
pub fn seeded_sequential_hare(
    tally: &VoteTally,
    seed: &SeedDistribution,
    tie: TiePolicy,
) -> Result<SeededRun> {
    seed.check(tally)?;
    let order = tie.order(tally);
    let d = seed.district_seats.clone();
    let base = seed.total;

    let (limit, fixed) = match seed.extra {
        ExtraSeats::Open => (residual_stop_bound(tally, seed)?, false),
        ExtraSeats::Cap(cap) => {
            check_house(base.saturating_add(cap))?;
            (cap, false)
        }
        ExtraSeats::Fixed(t) => {
            check_house(base.saturating_add(t))?;
            (t, true)
        }
    };

    let total = tally.total_votes() as i128;
    let votes = tally.vote_vector();
    let mut m = d.clone();
    let mut log = Vec::new();
    let mut tie_events = Vec::new();
    let scaled = |house: u64, m: &[u64]| -> Vec<i128> {
        votes
            .iter()
            .zip(m)
            .map(|(&v, &mi)| v as i128 * house as i128 - mi as i128 * total)
            .collect()
    };

    let mut j = 0u64;
    let stop_reason = loop {
        if fixed {
            if j == limit {
                break StopReason::FixedExtraExhausted;
            }
        } else {
            let r = scaled(base + j, &m);
            if r.iter().all(|x| x.abs() < total) {
                break StopReason::AllResidualsBelowOne;
            }
            if j == limit {
                match seed.extra {
                    ExtraSeats::Cap(_) => break StopReason::CapReached,
                    _ => unreachable!("residual stop bound exceeded"),
                }
            }
        }
        j += 1;
        let house = if fixed { base + limit } else { base + j };
        let r = scaled(house, &m);
        let winner = argmax(&r, &order);
        let mut tied: Vec<usize> = (0..r.len()).filter(|&p| r[p] == r[winner]).collect();
        if tied.len() > 1 {
            order.sort(&mut tied);
            tie_events.push(TieEvent {
                kind: TieKind::Deficit,
                step: j,
                value: Rational::new(r[winner], total),
                tied,
                awarded: vec![winner],
            });
        }
        log.push(DeficitRecord {
            iteration: j,
            house,
            deficits: r.iter().map(|&x| Rational::new(x, total)).collect(),
            awarded: winner,
        });
        m[winner] += 1;
    };

    let extra_seats = m.iter().zip(&d).map(|(a, b)| a - b).collect();
    Ok(SeededRun {
        method: Method::Hare,
        form: Form::Sequential,
        district_seats: d,
        extra_seats,
        totals: m,
        iterations: j,
        stop_reason,
        deficit_log: log,
        multiplier: None,
        multiplier_steps: Vec::new(),
        tie_events,
    })
}

fn argmax(values: &[i128], order: &TieOrder) -> usize {
    (0..values.len())
        .max_by(|&a, &b| {
            values[a]
                .cmp(&values[b])
                .then(order.rank(b).cmp(&order.rank(a)))
        })
        .expect("tally is non-empty")
}

/// Seeded multiplier search.
///
/// Starting from `M = D + 1`, party `i` receives `n_i = 0` while
/// `d_i >= M f_i` and `R(M f_i - d_i)` otherwise. The residual rule stops at
/// the smallest `M` where every `|M f_i - (d_i + n_i)| < 1`; when that set is
/// open below, the midpoint of the first feasible interval is reported. The
/// fixed rule stops at the smallest `M` adding exactly `N` seats.
pub fn seeded_divisor(
    tally: &VoteTally,
    seed: &SeedDistribution,
    rounding: Rounding,
    stop: DivisorStop,
    tie: TiePolicy,
) -> Result<SeededRun> {
    seed.check(tally)?;
    rounding.validate()?;
    let order = tie.order(tally);
    let votes = tally.vote_vector();
    let d = seed.district_seats.clone();
    let schedule = Schedule::new(&votes, tally.total_votes(), &d, rounding);
    let start = Rational::from(seed.total + 1);

    let (extra, witness, steps, tie_events, stop_reason) = match stop {
        DivisorStop::Fixed(n) => {
            check_house(seed.total.saturating_add(n))?;
            let out = schedule.sweep(start, n, &order);
            let reason = if out.tie.is_some() {
                StopReason::FixedExtraDeassigned
            } else {
                StopReason::FixedExtraExhausted
            };
            (
                out.seats,
                out.witness,
                out.steps,
                out.tie.into_iter().collect(),
                reason,
            )
        }
        DivisorStop::Residual => {
            let (seats, witness, steps) = residual_search(tally, &d, &schedule, start)?;
            (
                seats,
                witness,
                steps,
                Vec::new(),
                StopReason::AllResidualsBelowOne,
            )
        }
    };

    let totals: Vec<u64> = extra.iter().zip(&d).map(|(n, d)| n + d).collect();
    let method = match rounding {
        Rounding::Floor => Method::Dhondt,
        Rounding::Nearest { .. } => Method::SainteLague,
    };
    let steps = steps
        .into_iter()
        .map(|s| MultiplierStep {
            seats: s.seats.iter().zip(&d).map(|(n, d)| n + d).collect(),
            multiplier: s.multiplier,
        })
        .collect();
    Ok(SeededRun {
        method,
        form: Form::Multiplicative,
        district_seats: d,
        iterations: extra.iter().sum(),
        extra_seats: extra,
        totals,
        stop_reason,
        deficit_log: Vec::new(),
        multiplier: Some(witness),
        multiplier_steps: steps,
        tie_events,
    })
}

fn residual_search(
    tally: &VoteTally,
    district: &[u64],
    schedule: &Schedule<'_>,
    start: Rational,
) -> Result<(Vec<u64>, Rational, Vec<MultiplierStep>)> {
    let total = tally.total_votes();
    // every party is at or past its district seats from here on, after which
    // all residuals lie in (t - 1, t]
    let mut settled = start.clone();
    for (p, &d) in tally.parties().iter().zip(district) {
        if p.votes == 0 {
            if d > 0 {
                return Err(ApportionError::UnreachableResidualStop(p.id.clone()));
            }
            continue;
        }
        let at = Rational::new(d as u128 * total as u128, p.votes);
        if at > settled {
            settled = at;
        }
    }
    if settled > Rational::from(2 * MAX_HOUSE) {
        return Err(ApportionError::ResidualStopTooFar(
            settled.ceil().try_into().unwrap_or(u64::MAX),
        ));
    }

    let mut m = start;
    let mut steps = Vec::new();
    loop {
        let seats = schedule.counts(&m);
        steps.push(MultiplierStep {
            multiplier: m.clone(),
            seats: seats.clone(),
        });
        let next = schedule.next_event(&seats);
        let mut lower: Option<Rational> = None;
        let mut upper = next.clone();
        for (p, party) in tally.parties().iter().enumerate() {
            if party.votes == 0 {
                continue;
            }
            let held = district[p] + seats[p];
            if held > 0 {
                let lo = Rational::new((held - 1) as u128 * total as u128, party.votes);
                if lower.as_ref().is_none_or(|l| &lo > l) {
                    lower = Some(lo);
                }
            }
            let hi = Rational::new((held + 1) as u128 * total as u128, party.votes);
            if hi < upper {
                upper = hi;
            }
        }
        let witness = match lower {
            Some(lo) if lo.cmp(&m) != Ordering::Less => (lo < upper).then(|| lo.midpoint(&upper)),
            _ => (m < upper).then(|| m.clone()),
        };
        if let Some(w) = witness {
            return Ok((seats, w, steps));
        }
        debug_assert!(m < settled, "search passed the settling multiplier");
        m = next;
    }
}

/// `M f_i - m_i` for every party.
pub fn multiplier_residuals(tally: &VoteTally, totals: &[u64], m: &Rational) -> Vec<Rational> {
    (0..tally.len())
        .map(|p| &(m * &tally.fraction(p)) - &Rational::from(totals[p]))
        .collect()
}
