//! Searches for quota violations and house-monotonicity failures.
//!
//! Both scan an [`InstanceSpace`] in canonical order with deterministic ties
//! and return the first witness, so results are reproducible and minimal in
//! that order. `trials` bounds how many instances are examined.

use apportion::{apportion, Method, QuotaViolation, TiePolicy};
use serde::{Deserialize, Serialize};

use crate::brute::check_quota_property;
use crate::error::Result;
use crate::space::{Instance, InstanceSpace};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotaWitness {
    pub method: Method,
    pub instance: Instance,
    pub seats: Vec<u64>,
    pub violations: Vec<QuotaViolation>,
}

impl QuotaWitness {
    /// True if the instance still produces these seats and violations.
    pub fn replay(&self) -> Result<bool> {
        let tally = self.instance.tally();
        let a = apportion(
            &tally,
            self.instance.house_size,
            self.method,
            self.instance.tie,
        )?;
        let check = check_quota_property(&tally, self.instance.house_size, &a.seats)?;
        Ok(a.seats == self.seats && check.violations == self.violations)
    }
}

/// Seats at `house_size` and `house_size + 1` where some party lost a seat.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotonicityWitness {
    pub method: Method,
    pub votes: Vec<u64>,
    pub house_size: u64,
    pub seats_before: Vec<u64>,
    pub seats_after: Vec<u64>,
    pub losers: Vec<usize>,
}

impl MonotonicityWitness {
    pub fn replay(&self) -> Result<bool> {
        let found = monotonicity_at(
            &Instance::new(self.votes.clone(), self.house_size),
            self.method,
        )?;
        Ok(found.as_ref() == Some(self))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome<W> {
    pub examined: u64,
    pub witness: Option<W>,
}

pub fn quota_violation_at(instance: &Instance, method: Method) -> Result<Option<QuotaWitness>> {
    let tally = instance.tally();
    let a = apportion(&tally, instance.house_size, method, instance.tie)?;
    let check = check_quota_property(&tally, instance.house_size, &a.seats)?;
    Ok((!check.holds).then(|| QuotaWitness {
        method,
        instance: instance.clone(),
        seats: a.seats,
        violations: check.violations,
    }))
}

pub fn monotonicity_at(instance: &Instance, method: Method) -> Result<Option<MonotonicityWitness>> {
    let tally = instance.tally();
    let n = instance.house_size;
    let before = apportion(&tally, n, method, TiePolicy::Deterministic)?.seats;
    let after = apportion(&tally, n + 1, method, TiePolicy::Deterministic)?.seats;
    let losers: Vec<usize> = (0..before.len())
        .filter(|&i| after[i] < before[i])
        .collect();
    Ok((!losers.is_empty()).then(|| MonotonicityWitness {
        method,
        votes: instance.votes.clone(),
        house_size: n,
        seats_before: before,
        seats_after: after,
        losers,
    }))
}

fn scan<W>(
    space: &InstanceSpace,
    mut probe: impl FnMut(&Instance) -> Result<Option<W>>,
) -> Result<SearchOutcome<W>> {
    space.validate()?;
    let mut examined = 0;
    for instance in space.canonical() {
        examined += 1;
        if let Some(w) = probe(&instance)? {
            return Ok(SearchOutcome {
                examined,
                witness: Some(w),
            });
        }
    }
    Ok(SearchOutcome {
        examined,
        witness: None,
    })
}

pub fn search_quota_violation(
    space: &InstanceSpace,
    method: Method,
) -> Result<SearchOutcome<QuotaWitness>> {
    scan(space, |i| quota_violation_at(i, method))
}

pub fn search_house_monotonicity_violation(
    space: &InstanceSpace,
    method: Method,
) -> Result<SearchOutcome<MonotonicityWitness>> {
    scan(space, |i| monotonicity_at(i, method))
}

pub fn find_quota_violation(space: &InstanceSpace, method: Method) -> Result<Option<QuotaWitness>> {
    Ok(search_quota_violation(space, method)?.witness)
}

pub fn find_house_monotonicity_violation(
    space: &InstanceSpace,
    method: Method,
) -> Result<Option<MonotonicityWitness>> {
    Ok(search_house_monotonicity_violation(space, method)?.witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use apportion::ViolationKind;

    #[test]
    fn alabama_instance() {
        let w = monotonicity_at(&Instance::new(vec![6, 6, 2], 10), Method::Hare)
            .unwrap()
            .unwrap();
        assert_eq!(w.seats_before, vec![4, 4, 2]);
        assert_eq!(w.seats_after, vec![5, 5, 1]);
        assert_eq!(w.losers, vec![2]);
        assert!(w.replay().unwrap());
        for m in [Method::Dhondt, Method::SainteLague] {
            assert!(monotonicity_at(&Instance::new(vec![6, 6, 2], 10), m)
                .unwrap()
                .is_none());
        }
    }

    #[test]
    fn dhondt_over_quota() {
        let w = quota_violation_at(&Instance::new(vec![88, 6, 6], 10), Method::Dhondt)
            .unwrap()
            .unwrap();
        assert_eq!(w.seats, vec![10, 0, 0]);
        assert_eq!(w.violations.len(), 1);
        assert_eq!(w.violations[0].bound, 9);
        assert_eq!(w.violations[0].kind, ViolationKind::AboveUpper);
        assert!(w.replay().unwrap());
    }

    #[test]
    fn searches() {
        let space = InstanceSpace::small_search(20_000);
        let hare = search_house_monotonicity_violation(&space, Method::Hare).unwrap();
        let w = hare.witness.expect("hare is not house monotone");
        assert!(w.replay().unwrap());
        assert!(hare.examined <= 20_000);
        assert!(find_quota_violation(&space, Method::Hare)
            .unwrap()
            .is_none());
        assert!(find_quota_violation(&space, Method::Dhondt)
            .unwrap()
            .is_some());
        for m in [Method::Dhondt, Method::SainteLague] {
            let out = search_house_monotonicity_violation(&space, m).unwrap();
            assert!(out.witness.is_none());
            assert_eq!(out.examined, 20_000);
        }
    }
}
