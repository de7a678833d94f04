use proptest::prelude::*;

use ramseylab::{
    binomial_u64, decide_ramsey, enumerate_loose_paths, exhaustive_decide, export_cnf,
    find_loose_path, find_mono_loose_path, turan_max_edges, ForbiddenPattern, PathLength,
    RamseyVerdict, SearchConfig, TuranStatus,
};

/// Instances whose colorings can all be enumerated quickly.
fn small_instance() -> impl Strategy<Value = (usize, u32, usize)> {
    prop_oneof![
        (2..=6usize).prop_map(|n| (2, 2, n)),
        (3..=5usize).prop_map(|n| (2, 3, n)),
        (3..=6usize).prop_map(|n| (3, 2, n)),
        (4..=6usize).prop_map(|n| (4, 2, n)),
        (2..=8usize).prop_map(|n| (2, 1, n)),
        (3..=8usize).prop_map(|n| (3, 1, n)),
    ]
}

fn config() -> impl Strategy<Value = SearchConfig> {
    (1..=4usize, any::<bool>()).prop_map(|(threads, vertex_pruning)| SearchConfig {
        budget: 0,
        threads,
        vertex_pruning,
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn search_matches_enumeration((k, r, n) in small_instance(), cfg in config()) {
        let fast = decide_ramsey(k, r, n, &cfg).unwrap();
        let slow = exhaustive_decide(k, r, n).unwrap();
        prop_assert_eq!(fast.verdict, slow.verdict);
        if let Some(w) = &fast.witness {
            prop_assert!(find_mono_loose_path(w, PathLength::Three).is_none());
        }
        let sat = export_cnf(k, r, n).unwrap().satisfying_coloring().unwrap();
        prop_assert_eq!(sat.is_some(), fast.verdict == RamseyVerdict::Fails);
    }

    #[test]
    fn holds_is_monotone_in_n((k, r, n) in small_instance()) {
        let cfg = SearchConfig::default();
        if decide_ramsey(k, r, n, &cfg).unwrap().verdict == RamseyVerdict::Holds {
            prop_assert_eq!(decide_ramsey(k, r, n + 1, &cfg).unwrap().verdict, RamseyVerdict::Holds);
        }
    }

    #[test]
    fn budgets_never_guess((k, r, n) in small_instance(), budget in 1..200u64) {
        let exact = decide_ramsey(k, r, n, &SearchConfig::default()).unwrap().verdict;
        let limited = decide_ramsey(k, r, n, &SearchConfig::with_budget(budget)).unwrap();
        prop_assert!(limited.verdict == exact || limited.verdict == RamseyVerdict::Unknown);
        prop_assert!(limited.stats.nodes <= budget);
    }

    #[test]
    fn turan_extremal_is_sound(k in 2..=4usize, extra in 0..=3usize, three in any::<bool>()) {
        let n = k + extra + 1;
        let pattern = if three { ForbiddenPattern::LoosePath3 } else { ForbiddenPattern::LoosePath2 };
        let out = turan_max_edges(k, n, pattern, &SearchConfig::with_budget(500_000)).unwrap();
        prop_assert_eq!(out.extremal.edge_count(), out.max_edges);
        prop_assert!(find_loose_path(&out.extremal, pattern.path_length()).is_none());
        if three {
            let star = binomial_u64(n as u64 - 1, k as u64 - 1).unwrap() as usize;
            prop_assert!(out.max_edges >= star);
        }
    }
}

#[test]
fn r3_graph_value() {
    let cfg = SearchConfig::default();
    assert_eq!(
        decide_ramsey(2, 3, 5, &cfg).unwrap().verdict,
        RamseyVerdict::Fails
    );
    for n in 6..=8 {
        assert_eq!(
            decide_ramsey(2, 3, n, &cfg).unwrap().verdict,
            RamseyVerdict::Holds
        );
    }
}

#[test]
fn trivial_turan_values() {
    let cfg = SearchConfig::default();
    let a = turan_max_edges(3, 6, ForbiddenPattern::LoosePath3, &cfg).unwrap();
    assert_eq!((a.max_edges, a.status), (20, TuranStatus::Exact));
    let b = turan_max_edges(4, 6, ForbiddenPattern::LoosePath2, &cfg).unwrap();
    assert_eq!((b.max_edges, b.status), (15, TuranStatus::Exact));
    assert_eq!(
        turan_max_edges(2, 4, ForbiddenPattern::LoosePath3, &cfg)
            .unwrap()
            .max_edges,
        3
    );
}

#[test]
fn path_counts() {
    assert_eq!(
        enumerate_loose_paths(4, 2, PathLength::Three)
            .unwrap()
            .len(),
        12
    );
    assert_eq!(
        enumerate_loose_paths(7, 3, PathLength::Three)
            .unwrap()
            .len(),
        630
    );
    assert_eq!(
        enumerate_loose_paths(5, 3, PathLength::Two).unwrap().len(),
        15
    );
}
