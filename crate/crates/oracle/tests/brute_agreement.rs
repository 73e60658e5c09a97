use apportion::{
    apportion, hare_niemeyer, highest_averages, multiplicative_with, DivisorRule, Engine, Method,
    Rounding, TiePolicy, VoteTally,
};
use apportion_oracle::{
    bias_montecarlo, check_quota_property, divisor_outcomes, equivalence_suite,
    find_house_monotonicity_violation, find_quota_violation, largest_remainder_outcomes,
    paradox_suite, Execution, InstanceSpace, SuiteReport, Witness,
};
use proptest::prelude::*;

fn small_tally() -> impl Strategy<Value = (Vec<u64>, u64)> {
    (prop::collection::vec(0u64..20, 2..=4), 0u64..=8)
        .prop_filter("needs a vote", |(v, _)| v.iter().any(|&x| x > 0))
}

fn tie_policy() -> impl Strategy<Value = TiePolicy> {
    prop_oneof![
        Just(TiePolicy::Deterministic),
        any::<u64>().prop_map(|rng_seed| TiePolicy::SeededRandom { rng_seed }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn divisor_engines_pick_a_brute_force_outcome((votes, n) in small_tally(), tie in tie_policy()) {
        let t = VoteTally::from_votes(&votes).unwrap();
        for (rule, rounding) in [
            (DivisorRule::Dhondt, Rounding::Floor),
            (DivisorRule::SainteLague, Rounding::SAINTE_LAGUE),
        ] {
            let outcomes = divisor_outcomes(&t, n, rule).unwrap();
            let (table, _) = highest_averages(&t, n, rule, tie).unwrap();
            prop_assert!(outcomes.contains(&table.seats));
            if table.tie_events.is_empty() {
                prop_assert_eq!(outcomes.len(), 1);
            }
            for engine in [Engine::Threshold, Engine::Sweep] {
                let (m, _) = multiplicative_with(&t, n, rounding, tie, engine).unwrap();
                prop_assert!(outcomes.contains(&m.seats));
            }
        }
    }

    #[test]
    fn hare_picks_a_brute_force_outcome((votes, n) in small_tally(), tie in tie_policy()) {
        let t = VoteTally::from_votes(&votes).unwrap();
        let outcomes = largest_remainder_outcomes(&t, n).unwrap();
        let a = hare_niemeyer(&t, n, tie).unwrap();
        prop_assert!(outcomes.contains(&a.seats));
        if a.tie_events.is_empty() {
            prop_assert_eq!(outcomes.len(), 1);
        }
        prop_assert!(check_quota_property(&t, n, &a.seats).unwrap().holds);
    }
}

#[test]
fn alabama() {
    let t = VoteTally::from_votes(&[6, 6, 2]).unwrap();
    let at = |n| {
        apportion(&t, n, Method::Hare, TiePolicy::Deterministic)
            .unwrap()
            .seats
    };
    assert_eq!(at(10), vec![4, 4, 2]);
    assert_eq!(at(11), vec![5, 5, 1]);
}

#[test]
fn quota_witness_for_dhondt() {
    let t = VoteTally::from_votes(&[88, 6, 6]).unwrap();
    let a = apportion(&t, 10, Method::Dhondt, TiePolicy::Deterministic).unwrap();
    let check = check_quota_property(&t, 10, &a.seats).unwrap();
    assert!(!check.holds);
    assert_eq!(check.violations[0].party, 0);
    assert_eq!(check.violations[0].bound, 9);
}

#[test]
fn searches_in_the_small_space() {
    let space = InstanceSpace::small_search(30_000);
    let w = find_house_monotonicity_violation(&space, Method::Hare)
        .unwrap()
        .unwrap();
    assert!(w.replay().unwrap());
    assert!(find_house_monotonicity_violation(&space, Method::Dhondt)
        .unwrap()
        .is_none());
    assert!(
        find_house_monotonicity_violation(&space, Method::SainteLague)
            .unwrap()
            .is_none()
    );
    assert!(find_quota_violation(&space, Method::Hare)
        .unwrap()
        .is_none());
    let q = find_quota_violation(&space, Method::Dhondt)
        .unwrap()
        .unwrap();
    assert!(q.replay().unwrap());
}

#[test]
fn paradox_report() {
    let r = paradox_suite(&InstanceSpace::small_search(30_000)).unwrap();
    assert!(r.is_consistent());
    assert_eq!(r.trials_run, 30_000);
    assert_eq!(r.statistics["house-monotonicity/dhondt"].sum, 0);
    assert_eq!(r.statistics["quota-violation/hare"].sum, 0);
    let has_hare_mono = r
        .witnesses
        .iter()
        .any(|w| matches!(w, Witness::HouseMonotonicity(m) if m.method == Method::Hare));
    assert!(has_hare_mono);
}

fn roundtrip(r: &SuiteReport) {
    let s = serde_json::to_string(r).unwrap();
    let back: SuiteReport = serde_json::from_str(&s).unwrap();
    assert_eq!(&back, r);
}

#[test]
fn equivalence_is_clean_and_reproducible() {
    let space = InstanceSpace::equivalence_default(500, 42);
    let serial = equivalence_suite(&space, Execution::Serial).unwrap();
    let parallel = equivalence_suite(&space, Execution::Parallel).unwrap();
    assert!(serial.disagreements.is_empty());
    assert_eq!(serial.agreements, 500);
    assert_eq!(
        serde_json::to_string(&serial).unwrap(),
        serde_json::to_string(&parallel).unwrap()
    );
    roundtrip(&serial);
}

#[test]
fn bias_is_reproducible() {
    let space = InstanceSpace::equivalence_default(300, 9);
    let a = bias_montecarlo(&space, Execution::Serial).unwrap();
    let b = bias_montecarlo(&space, Execution::Parallel).unwrap();
    assert_eq!(
        serde_json::to_vec(&a).unwrap(),
        serde_json::to_vec(&b).unwrap()
    );
    roundtrip(&a);
}

#[test]
fn paradox_report_roundtrips() {
    let r = paradox_suite(&InstanceSpace::small_search(800)).unwrap();
    roundtrip(&r);
}
