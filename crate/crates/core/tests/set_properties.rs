mod common;

use addsys::sets::Progression;
use addsys::{
    build_sum_system, is_progression, minkowski_sum, polynomial_check, verify_sum_system, ComponentSet, Limits,
    SumSystem,
};
use common::*;
use proptest::prelude::*;

fn arb_sets() -> impl Strategy<Value = Vec<ComponentSet>> {
    prop::collection::vec(prop::collection::btree_set(0u64..40, 1..6), 1..4)
        .prop_map(|v| v.into_iter().map(|s| ComponentSet::new(s.into_iter().collect()).unwrap()).collect())
}

proptest! {
    #[test]
    fn minkowski_matches_brute_force(sets in arb_sets()) {
        let signed: Vec<Vec<i64>> = sets.iter().map(|s| s.iter().map(|x| x as i64).collect()).collect();
        prop_assert_eq!(minkowski_sum(&sets, &Limits::default()).unwrap(), all_sums(&signed));
    }

    /// The two sum-system checks agree with each other and with the oracle.
    #[test]
    fn polynomial_agrees_with_direct_check(sets in arb_sets()) {
        prop_assume!(sets.iter().all(|s| s.len() >= 2));
        let ss = SumSystem::new(sets).unwrap();
        let l = Limits::default();
        let direct = verify_sum_system(&ss, &l).unwrap().passed;
        prop_assert_eq!(polynomial_check(&ss, &l).unwrap().passed, direct);
        prop_assert_eq!(oracle_is_sum_system(&parts_of(&ss)), direct);
    }

    #[test]
    fn progression_membership(start in -50i64..50, step in 1u64..5, count in 1u64..20, extra in -60i64..60) {
        let p = Progression::new(start, step, count).unwrap();
        let all: Vec<i64> = p.iter().collect();
        prop_assert!(is_progression(&all, &p).passed);
        let mut more = all.clone();
        more.push(extra);
        prop_assert!(!is_progression(&more, &p).passed);
        prop_assert!(!is_progression(&all[1..], &p).passed);
    }
}

/// Mutations of real systems: move one element by a small offset.
#[test]
fn mutated_systems_fail_both_checks() {
    let l = Limits::default();
    for text in [JOF_15_8_6_A, JOF_15_7_9, "1:2,2:3,1:2", "2:4,1:3"] {
        let ss = build_sum_system(&jof(text)).unwrap();
        let parts = parts_of(&ss);
        for j in 0..parts.len() {
            for i in 1..parts[j].len() {
                let mut mutated = parts.clone();
                mutated[j][i] += 1;
                mutated[j].sort_unstable();
                mutated[j].dedup();
                let Ok(m) = SumSystem::from_vecs(mutated.clone()) else { continue };
                let direct = verify_sum_system(&m, &l).unwrap().passed;
                assert!(!direct || oracle_is_sum_system(&mutated));
                assert_eq!(polynomial_check(&m, &l).unwrap().passed, direct, "{mutated:?}");
            }
        }
    }
}
