use proptest::prelude::*;

use stable_noncrossing::oracle::{self, PickSequence};
use stable_noncrossing::solver::{solve, verify_run, Action};
use stable_noncrossing::stability::{
    crosses, find_blocking_pairs, find_noncrossing_blocking_pairs, is_blocking_pair,
    is_noncrossing, is_noncrossing_blocking_pair, is_ssnm, is_wsnm, Matching,
};
use stable_noncrossing::Instance;

fn small_instance() -> impl Strategy<Value = Instance> {
    (1usize..=6, 1usize..=6, prop::sample::select(vec![0.3, 0.7, 1.0]), any::<u64>())
        .prop_map(|(n1, n2, d, seed)| Instance::random(n1, n2, d, seed))
}

/// Arbitrary (possibly crossing) matching over all pairs.
fn any_matching(n1: usize, n2: usize, seed: u64) -> Matching {
    let mut m = Matching::new(n1, n2);
    let mut s = seed;
    for i in 1..=n1 {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let j = (s >> 33) as usize % (n2 + 1);
        if j > 0 && m.partner_of_woman(j).is_none() {
            m.insert(i, j);
        }
    }
    m
}

fn noncrossing_by_pairs(m: &Matching) -> bool {
    let pairs: Vec<_> = m.pairs().collect();
    pairs.iter().enumerate().all(|(a, &e)| pairs[a + 1..].iter().all(|&f| !crosses(e, f)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn solver_output_is_an_enumerated_wsnm(inst in small_instance()) {
        let sol = solve(&inst).unwrap();
        let all = oracle::enumerate_wsnm(&inst).unwrap();
        prop_assert!(!all.is_empty());
        prop_assert!(all.contains(&sol.matching));
        prop_assert_eq!(verify_run(&inst, &sol), Ok(()));
    }

    #[test]
    fn checkers_agree_with_enumeration(inst in small_instance()) {
        let ranks = inst.rank_tables();
        let wsnm = oracle::enumerate_wsnm(&inst).unwrap();
        for m in oracle::enumerate_noncrossing_matchings(&inst).unwrap() {
            prop_assert_eq!(is_wsnm(&ranks, &m), wsnm.contains(&m));
            if is_ssnm(&ranks, &m) {
                prop_assert!(is_wsnm(&ranks, &m));
            }
        }
        if let Some(m) = oracle::exists_ssnm(&inst).unwrap() {
            prop_assert!(is_ssnm(&ranks, &m) && is_wsnm(&ranks, &m));
        }
        let best = oracle::max_size_wsnm(&inst).unwrap();
        prop_assert!(wsnm.iter().all(|m| m.len() <= best.len()));
    }

    #[test]
    fn blocking_pair_lists_match_pairwise_checks(inst in small_instance(), seed in any::<u64>()) {
        let ranks = inst.rank_tables();
        let m = any_matching(inst.n_men(), inst.n_women(), seed);
        prop_assert_eq!(is_noncrossing(&m), noncrossing_by_pairs(&m));
        let mut expected = Vec::new();
        for i in 1..=inst.n_men() {
            for j in 1..=inst.n_women() {
                if is_noncrossing_blocking_pair(&ranks, &m, i, j) {
                    prop_assert!(is_blocking_pair(&ranks, &m, i, j));
                    expected.push((i, j));
                }
            }
        }
        let found = find_noncrossing_blocking_pairs(&ranks, &m);
        prop_assert_eq!(&found, &expected);
        let all = find_blocking_pairs(&ranks, &m);
        prop_assert!(found.iter().all(|p| all.contains(p)));
    }

    #[test]
    fn empty_matching_is_blocked_by_every_acceptable_pair(inst in small_instance()) {
        let ranks = inst.rank_tables();
        let m = Matching::new(inst.n_men(), inst.n_women());
        for i in 1..=inst.n_men() {
            for j in 1..=inst.n_women() {
                prop_assert_eq!(
                    is_noncrossing_blocking_pair(&ranks, &m, i, j),
                    ranks.is_mutually_acceptable(i, j)
                );
            }
        }
    }

    #[test]
    fn crossing_is_symmetric(a in (1usize..9, 1usize..9), b in (1usize..9, 1usize..9)) {
        prop_assume!(a.0 != b.0 && a.1 != b.1);
        prop_assert_eq!(crosses(a, b), crosses(b, a));
    }

    #[test]
    fn solver_picks_the_topmost_unstable_man(inst in small_instance()) {
        let sol = solve(&inst).unwrap();
        let norm = inst.normalize_mutual();
        let ranks = norm.rank_tables();
        let mut mismatch = None;
        sol.trace.replay(|ev, before, _| {
            if let Action::Propose { woman, .. } = ev.action {
                let top = oracle::topmost_unstable(&ranks, before);
                let best = stable_noncrossing::stability::best_improvement(&ranks, before, ev.man);
                if top != Some(ev.man) || best != Some(woman) {
                    mismatch.get_or_insert(ev.step);
                }
            }
        });
        prop_assert_eq!(mismatch, None);

        let picks: Vec<usize> = sol.trace.events().iter()
            .filter(|e| matches!(e.action, Action::Propose { .. }))
            .map(|e| e.man)
            .collect();
        let n = picks.len();
        let run = oracle::run_arbitrary_order(&inst, &PickSequence { picks, max_steps: n });
        prop_assert!(run.terminated);
        let empty = Matching::new(inst.n_men(), inst.n_women());
        prop_assert_eq!(run.matchings.last().unwrap_or(&empty), &sol.matching);
    }

    #[test]
    fn normalization_is_idempotent_and_ranks_are_mutual(
        n1 in 1usize..8, n2 in 1usize..8, seed in any::<u64>()
    ) {
        // independent one-sided lists, then normalize
        let a = Instance::random(n1, n2, 0.6, seed);
        let b = Instance::random(n1, n2, 0.6, seed ^ 0x9e37_79b9);
        let mixed = Instance::new(a.men_prefs().to_vec(), b.women_prefs().to_vec());
        let once = mixed.normalize_mutual();
        prop_assert_eq!(once.normalize_mutual(), once.clone());
        let ranks = once.rank_tables();
        for i in 1..=n1 {
            for j in 1..=n2 {
                prop_assert_eq!(ranks.man_rank(i, j).is_ranked(), ranks.woman_rank(j, i).is_ranked());
            }
        }
    }

    #[test]
    fn text_format_roundtrips(n1 in 0usize..9, n2 in 0usize..9, d in 0.0f64..=1.0, seed in any::<u64>()) {
        let inst = Instance::random(n1, n2, d, seed);
        prop_assert_eq!(Instance::parse(&inst.to_text()).unwrap(), inst);
    }

    #[test]
    fn runs_are_deterministic(n in 1usize..40, seed in any::<u64>()) {
        let inst = Instance::random(n, n, 0.5, seed);
        prop_assert_eq!(solve(&inst).unwrap(), solve(&inst).unwrap());
    }
}
