mod common;

use common::{brute_chromatic, brute_cover_count, hypergraph, random_cover, random_gauge};
use hyperchroma::chromatic::{chromatic_polynomial, ChromaticCache};
use hyperchroma::covers::{
    count_colorings_brute, count_colorings_ie, cwd1_hypothesis, cwd1_value, cwd_bound, dp_exact,
    dp_upper_search, natural_off_edge_min, Cover, SearchBudget, UpperStrategy,
};
use hyperchroma::instance::{cycle, hypertree};
use hyperchroma::{ExactRational, Hypergraph};
use num_bigint::BigInt;
use proptest::prelude::*;

const BUDGET: u64 = 1 << 24;

fn small(max_n: usize) -> impl Strategy<Value = (Hypergraph, u32, u64)> {
    (hypergraph(max_n, 5), 2u32..=3, any::<u64>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn brute_and_inclusion_exclusion_agree((h, k, seed) in small(6), drop in 0usize..=2) {
        let cover = random_cover(&h, k, seed, drop);
        prop_assert!(cover.validate(&h).is_ok());
        let brute = count_colorings_brute(&h, &cover, BUDGET).unwrap();
        prop_assert_eq!(brute, brute_cover_count(&h, &cover));
        prop_assert_eq!(count_colorings_ie(&h, &cover, BUDGET).unwrap(), brute);
    }

    #[test]
    fn natural_cover_counts_proper_colorings((h, k, _seed) in small(6)) {
        let natural = Cover::natural(&h, k);
        prop_assert_eq!(count_colorings_brute(&h, &natural, BUDGET).unwrap(), brute_chromatic(&h, k));
    }

    #[test]
    fn gauge_invariance((h, k, seed) in small(6), drop in 0usize..=2) {
        let cover = random_cover(&h, k, seed, drop);
        let gauged = cover.apply_gauge(&h, &random_gauge(h.n(), k, seed ^ 0x5eed)).unwrap();
        prop_assert!(gauged.validate(&h).is_ok());
        prop_assert_eq!(
            count_colorings_brute(&h, &gauged, BUDGET).unwrap(),
            count_colorings_brute(&h, &cover, BUDGET).unwrap()
        );
    }

    #[test]
    fn saturation_never_adds_colorings((h, k, seed) in small(6)) {
        let cover = random_cover(&h, k, seed, 3);
        let full = cover.saturate_in(&h);
        prop_assert!(full.is_perfect());
        prop_assert!(full.validate(&h).is_ok());
        prop_assert!(
            count_colorings_brute(&h, &full, BUDGET).unwrap()
                <= count_colorings_brute(&h, &cover, BUDGET).unwrap()
        );
    }

    #[test]
    fn search_results_are_ordered(h in hypergraph(5, 3), k in 2u32..=3) {
        let budget = SearchBudget::default();
        let pruned = dp_exact(&h, k, true, budget).unwrap();
        let p = chromatic_polynomial(&h).unwrap().eval_i64(k as i64);
        prop_assert!(BigInt::from(pruned.value) <= p);
        let witness = pruned.witness.expand(&h).unwrap();
        prop_assert_eq!(count_colorings_brute(&h, &witness, BUDGET).unwrap(), pruned.value);
        let upper = dp_upper_search(&h, k, UpperStrategy::Shifts, budget).unwrap();
        prop_assert!(upper.bound >= pruned.value);
        if let Ok(bound) = cwd_bound(&h) {
            prop_assert!(ExactRational::from_integer(pruned.value.into()) <= bound.at(k as i64).unwrap());
        }
    }

    #[test]
    fn cwd1_is_below_natural_off_edge_min(h in hypergraph(5, 4), k in 2u32..=3) {
        let mut cache = ChromaticCache::new();
        for e in 0..h.m() {
            if !cwd1_hypothesis(&h, e).unwrap() {
                continue;
            }
            let v = cwd1_value(&h, e, k as i64, &mut cache).unwrap();
            let min = natural_off_edge_min(&h, e, k, SearchBudget::default()).unwrap();
            prop_assert!(v.value <= ExactRational::from_integer(min.value.into()),
                "edge {}: cwd1 {} vs {}", e, v.value, min.value);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn gauge_fixing_preserves_the_minimum(h in hypergraph(4, 3), k in 2u32..=3) {
        let budget = SearchBudget::default();
        let pruned = dp_exact(&h, k, true, budget).unwrap();
        match dp_exact(&h, k, false, budget) {
            Ok(full) => prop_assert_eq!(full.value, pruned.value),
            Err(hyperchroma::Error::BudgetExceeded { .. }) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }
}

#[test]
fn hypertrees_are_dp_rigid() {
    for m in 1..=2 {
        for seed in 0..3 {
            let h = hypertree(3, m, seed).unwrap();
            for k in 2..=3u32 {
                let dp = dp_exact(&h, k, true, SearchBudget::default()).unwrap();
                let p = chromatic_polynomial(&h).unwrap().eval_i64(k as i64);
                assert_eq!(BigInt::from(dp.value), p, "m={m} seed={seed} k={k}");
            }
        }
    }
}

#[test]
fn four_cycle_dp_values() {
    let c4 = cycle(2, 4).unwrap();
    let b = SearchBudget::default();
    assert_eq!(dp_exact(&c4, 3, true, b).unwrap().value, 15);
    assert_eq!(dp_exact(&c4, 3, false, b).unwrap().value, 15);
    assert_eq!(dp_exact(&c4, 2, true, b).unwrap().value, 0);
    let v = cwd1_value(&c4, 0, 3, &mut ChromaticCache::new()).unwrap();
    assert_eq!(v.value, ExactRational::from_integer(15.into()));
}

#[test]
fn invalid_covers_are_rejected() {
    let h = Hypergraph::from_edges([[0, 1]]).unwrap();
    let overlapping = Cover {
        k: 2,
        maps: vec![vec![vec![1, 1], vec![1, 2]]],
    };
    assert!(overlapping.validate(&h).is_err());
    let out_of_range = Cover {
        k: 2,
        maps: vec![vec![vec![3, 1]]],
    };
    assert!(out_of_range.validate(&h).is_err());
}
