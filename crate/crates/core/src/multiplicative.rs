//! Multiplicative form: find a multiplier `M` with `sum R(M f_i) = N` and give
//! every party `R(M f_i)` seats.
//!
//! Floor rounding reproduces d'Hondt-Jefferson, rounding at one half
//! reproduces Sainte-Laguë. Two engines are provided and must agree:
//! [`Engine::Threshold`] selects the `N` smallest seat thresholds directly,
//! [`Engine::Sweep`] walks the multiplier up or down one threshold event at a
//! time starting from `M = N`.

use serde::{Deserialize, Serialize};

use crate::allocation::{Allocation, Form, Method};
use crate::error::Result;
use crate::rational::Rational;
use crate::schedule::{MultiplierStep, Rounding, Schedule};
use crate::tally::{check_house, VoteTally};
use crate::tie::TiePolicy;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    #[default]
    Threshold,
    Sweep,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplierTrace {
    pub rounding: Rounding,
    pub engine: Engine,
    /// Candidate multipliers in the order they were visited, with the seats
    /// each one yields.
    pub steps: Vec<MultiplierStep>,
    /// A multiplier reproducing the final allocation (after any
    /// de-assignment at a simultaneous crossing).
    pub witness: Rational,
    /// `t V / M`: the quota the divisor form pays for its last seat. For
    /// floor rounding this is `V / M`, for one-half rounding `V / (2M)`.
    pub implied_quota: Option<Rational>,
}

pub fn multiplicative(
    tally: &VoteTally,
    house_size: u64,
    rounding: Rounding,
    tie: TiePolicy,
) -> Result<(Allocation, MultiplierTrace)> {
    multiplicative_with(tally, house_size, rounding, tie, Engine::Threshold)
}

pub fn multiplicative_with(
    tally: &VoteTally,
    house_size: u64,
    rounding: Rounding,
    tie: TiePolicy,
    engine: Engine,
) -> Result<(Allocation, MultiplierTrace)> {
    check_house(house_size)?;
    rounding.validate()?;
    let order = tie.order(tally);
    let votes = tally.vote_vector();
    let offsets = vec![0u64; votes.len()];
    let schedule = Schedule::new(&votes, tally.total_votes(), &offsets, rounding);
    let outcome = match engine {
        Engine::Threshold => schedule.select(house_size, &order),
        Engine::Sweep => schedule.sweep(Rational::from(house_size), house_size, &order),
    };
    let implied_quota = (!outcome.witness.is_zero()).then(|| {
        (&rounding.threshold() * &Rational::from(tally.total_votes())).div(&outcome.witness)
    });
    let method = match rounding {
        Rounding::Floor => Method::Dhondt,
        Rounding::Nearest { .. } => Method::SainteLague,
    };
    Ok((
        Allocation {
            method,
            form: Form::Multiplicative,
            house_size,
            seats: outcome.seats,
            tie_events: outcome.tie.into_iter().collect(),
        },
        MultiplierTrace {
            rounding,
            engine,
            steps: outcome.steps,
            witness: outcome.witness,
            implied_quota,
        },
    ))
}

/// Seats every party gets at multiplier `m`: `R(m f_i)`.
pub fn seats_at(tally: &VoteTally, rounding: Rounding, m: &Rational) -> Vec<u64> {
    let votes = tally.vote_vector();
    let offsets = vec![0u64; votes.len()];
    Schedule::new(&votes, tally.total_votes(), &offsets, rounding).counts(m)
}

/// True if rounding `m f_i` fills exactly `house_size` seats.
pub fn is_witness(tally: &VoteTally, house_size: u64, rounding: Rounding, m: &Rational) -> bool {
    seats_at(tally, rounding, m).iter().sum::<u64>() == house_size
}

#[cfg(test)]
mod tests {
    use super::*;

    fn both(votes: &[u64], n: u64, rounding: Rounding) -> Vec<u64> {
        let t = VoteTally::from_votes(votes).unwrap();
        let (a, ta) =
            multiplicative_with(&t, n, rounding, TiePolicy::Deterministic, Engine::Threshold)
                .unwrap();
        let (b, tb) =
            multiplicative_with(&t, n, rounding, TiePolicy::Deterministic, Engine::Sweep).unwrap();
        assert_eq!(a.seats, b.seats);
        if a.tie_events.is_empty() {
            assert!(is_witness(&t, n, rounding, &ta.witness));
            assert!(is_witness(&t, n, rounding, &tb.witness));
        }
        a.seats
    }

    #[test]
    fn floor_examples() {
        assert_eq!(both(&[600, 300, 100], 10, Rounding::Floor), vec![6, 3, 1]);
        assert_eq!(both(&[53, 24, 23], 10, Rounding::Floor), vec![6, 2, 2]);
        assert_eq!(both(&[88, 6, 6], 10, Rounding::Floor), vec![10, 0, 0]);
        assert_eq!(
            both(&[78, 78, 422, 422], 10, Rounding::Floor),
            vec![0, 0, 5, 5]
        );
        assert_eq!(both(&[7], 5, Rounding::Floor), vec![5]);
    }

    #[test]
    fn nearest_examples() {
        assert_eq!(
            both(&[600, 300, 100], 10, Rounding::SAINTE_LAGUE),
            vec![6, 3, 1]
        );
        assert_eq!(
            both(&[53, 24, 23], 3, Rounding::SAINTE_LAGUE),
            vec![1, 1, 1]
        );
        assert_eq!(
            both(&[78, 78, 422, 422], 10, Rounding::SAINTE_LAGUE),
            vec![1, 1, 4, 4]
        );
        assert_eq!(both(&[7], 5, Rounding::SAINTE_LAGUE), vec![5]);
    }

    #[test]
    fn hand_checked_witnesses() {
        let t = VoteTally::from_votes(&[53, 24, 23]).unwrap();
        // floor(6.042), floor(2.736), floor(2.622)
        let m = Rational::new(57, 5);
        assert_eq!(seats_at(&t, Rounding::Floor, &m), vec![6, 2, 2]);
        assert!(is_witness(&t, 10, Rounding::Floor, &m));
        // round(1.484), round(0.672), round(0.644)
        let m = Rational::new(14, 5);
        assert_eq!(seats_at(&t, Rounding::SAINTE_LAGUE, &m), vec![1, 1, 1]);
        assert!(is_witness(&t, 3, Rounding::SAINTE_LAGUE, &m));
    }

    #[test]
    fn witness_relates_to_the_divisor_quota() {
        let t = VoteTally::from_votes(&[53, 24, 23]).unwrap();
        let (_, tr) = multiplicative(&t, 10, Rounding::Floor, TiePolicy::Deterministic).unwrap();
        // last dHJ bid is 53/6, so M = V / q = 600/53
        assert_eq!(tr.witness, Rational::new(600, 53));
        assert_eq!(tr.implied_quota, Some(Rational::new(53, 6)));
    }

    #[test]
    fn overshoot_is_deassigned_by_priority() {
        // equal shares cross together
        let t = VoteTally::from_votes(&[10, 10, 10]).unwrap();
        for engine in [Engine::Threshold, Engine::Sweep] {
            let (a, _) =
                multiplicative_with(&t, 4, Rounding::Floor, TiePolicy::Deterministic, engine)
                    .unwrap();
            assert_eq!(a.seats, vec![2, 1, 1]);
            assert_eq!(a.tie_events.len(), 1);
            assert_eq!(a.tie_events[0].tied, vec![0, 1, 2]);
            assert_eq!(a.tie_events[0].awarded, vec![0]);
        }
    }

    #[test]
    fn sweep_can_step_down() {
        // at M = N = 2 the shares .54/.52/.94 all round up; stepping below the
        // second party's threshold 100/52 leaves two seats
        let t = VoteTally::from_votes(&[27, 26, 47]).unwrap();
        let (a, tr) = multiplicative_with(
            &t,
            2,
            Rounding::SAINTE_LAGUE,
            TiePolicy::Deterministic,
            Engine::Sweep,
        )
        .unwrap();
        assert_eq!(a.seats, vec![1, 0, 1]);
        assert!(a.tie_events.is_empty());
        assert_eq!(tr.steps.len(), 2);
        assert!(tr.witness < Rational::from(2u64));
        assert!(is_witness(&t, 2, Rounding::SAINTE_LAGUE, &tr.witness));

        // equal shares over-fill at M = N and must be de-assigned
        let t = VoteTally::from_votes(&[1, 1]).unwrap();
        let (a, _) = multiplicative_with(
            &t,
            3,
            Rounding::SAINTE_LAGUE,
            TiePolicy::Deterministic,
            Engine::Sweep,
        )
        .unwrap();
        assert_eq!(a.seats, vec![2, 1]);
        assert_eq!(a.tie_events.len(), 1);
    }

    #[test]
    fn empty_house() {
        let t = VoteTally::from_votes(&[4, 1]).unwrap();
        for engine in [Engine::Threshold, Engine::Sweep] {
            let (a, tr) = multiplicative_with(
                &t,
                0,
                Rounding::SAINTE_LAGUE,
                TiePolicy::Deterministic,
                engine,
            )
            .unwrap();
            assert_eq!(a.seats, vec![0, 0]);
            assert_eq!(tr.witness, Rational::zero());
            assert_eq!(tr.implied_quota, None);
        }
    }
}
