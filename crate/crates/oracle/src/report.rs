use std::collections::BTreeMap;

use apportion::{Method, Rational};
use serde::{Deserialize, Serialize};

use crate::search::{MonotonicityWitness, QuotaWitness};
use crate::space::{Instance, InstanceSpace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteKind {
    Equivalence,
    Bias,
    Paradox,
}

/// What was compared, and the two sides when it failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "check", content = "method", rename_all = "kebab-case")]
pub enum Check {
    /// Floor-multiplier threshold engine vs d'Hondt table.
    DhondtThreshold,
    /// Floor-multiplier sweep engine vs d'Hondt table.
    DhondtSweep,
    /// One-half-multiplier threshold engine vs Sainte-Laguë table.
    SainteLagueThreshold,
    SainteLagueSweep,
    /// Sequential largest deficit vs lower quota plus largest remainders.
    SequentialHare,
    /// Largest-remainder result within its quotas.
    HareQuota,
    HouseMonotonicity(Method),
    QuotaProperty(Method),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    #[serde(flatten)]
    pub check: Check,
    /// Reference side: the divisor table, the classical form, or the seats
    /// at the smaller house.
    pub expected: Vec<u64>,
    pub actual: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disagreement {
    pub trial: u64,
    pub instance: Instance,
    pub failures: Vec<Failure>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    QuotaViolation(QuotaWitness),
    HouseMonotonicity(MonotonicityWitness),
}

/// A count of samples and their integer sum; the mean is exact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Statistic {
    pub samples: u64,
    pub sum: i64,
    pub mean: Option<Rational>,
}

impl Statistic {
    pub fn new(samples: u64, sum: i64) -> Self {
        let mean = (samples > 0).then(|| Rational::new(sum, samples));
        Statistic { samples, sum, mean }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: SuiteKind,
    pub space: InstanceSpace,
    pub trials_run: u64,
    pub agreements: u64,
    pub disagreements: Vec<Disagreement>,
    pub witnesses: Vec<Witness>,
    pub statistics: BTreeMap<String, Statistic>,
}

impl SuiteReport {
    pub fn is_consistent(&self) -> bool {
        self.agreements + self.disagreements.len() as u64 == self.trials_run
    }
}

/// Integer accumulator merged in trial order.
#[derive(Debug, Default, Clone)]
pub(crate) struct Tally {
    entries: BTreeMap<String, (u64, i64)>,
}

impl Tally {
    pub fn add(&mut self, key: impl Into<String>, value: i64) {
        let e = self.entries.entry(key.into()).or_default();
        e.0 += 1;
        e.1 += value;
    }

    pub fn into_statistics(self) -> BTreeMap<String, Statistic> {
        self.entries
            .into_iter()
            .map(|(k, (n, s))| (k, Statistic::new(n, s)))
            .collect()
    }
}
