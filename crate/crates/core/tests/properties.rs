//! Property-based invariants over random graphs, semigroups and words.

mod support;

use proptest::collection::vec;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use testability_core::construct::graph_direct_product;
use testability_core::graph::{
    is_1_testable, is_k_testable_graph, property_via_semigroup, transition_semigroup,
    TransformationAction,
};
use testability_core::io::{parse_graph, parse_semigroup, write_graph, write_semigroup};
use testability_core::oracle::{
    brute_force_scan, profile_determines, profile_of, Determination, KProfile, LetterAction,
    ProfileAutomaton, ScanResult,
};
use testability_core::random::random_transformation_semigroup;
use testability_core::semigroup::{check_local_property, LocalPropertyId};
use testability_core::{Holds, Property, TransitionGraph, Witness};

use support::naive_transitions;

const BUDGET: usize = 200_000;

fn complete_graph(max_nodes: usize, max_labels: usize) -> impl Strategy<Value = TransitionGraph> {
    (1..=max_nodes, 1..=max_labels).prop_flat_map(|(n, a)| {
        vec(vec(0..n, a), n).prop_map(|rows| TransitionGraph::from_rows(&rows).unwrap())
    })
}

fn partial_graph() -> impl Strategy<Value = TransitionGraph> {
    (1usize..=5, 1usize..=3).prop_flat_map(|(n, a)| {
        vec(proptest::option::of(0..n), n * a)
            .prop_map(move |delta| TransitionGraph::new(a, n, delta).unwrap())
    })
}

fn words(max_len: usize) -> impl Strategy<Value = Vec<usize>> {
    vec(0usize..2, 0..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn profile_update_is_sound(word in words(12), letter in 0usize..2, k in 1usize..=3, t in 1usize..=2) {
        let mut longer = word.clone();
        longer.push(letter);
        prop_assert_eq!(profile_of(&word, k, t).extend(letter), profile_of(&longer, k, t));
        let folded = word.iter().fold(KProfile::empty(k, t), |p, &l| p.extend(l));
        prop_assert_eq!(folded, profile_of(&word, k, t));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn packed_states_decode_to_profiles(word in words(14), k in 1usize..=3, t in 1usize..=3) {
        let mut automaton = ProfileAutomaton::new(2, k, t, BUDGET).unwrap();
        let state = automaton.run(&word).unwrap();
        prop_assert_eq!(automaton.profile(state), profile_of(&word, k, t));
    }

    #[test]
    fn equal_profiles_share_a_state(a in words(10), b in words(10), k in 1usize..=3, t in 1usize..=2) {
        let mut automaton = ProfileAutomaton::new(2, k, t, BUDGET).unwrap();
        let sa = automaton.run(&a).unwrap();
        let sb = automaton.run(&b).unwrap();
        prop_assert_eq!(sa == sb, profile_of(&a, k, t) == profile_of(&b, k, t));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn comments_and_layout_are_ignored(gr in partial_graph(), comments in vec("[a-z#;:]{1,6}", 1..8), seed in any::<u64>()) {
        let text = write_graph(&gr);
        let mut out = String::new();
        let mut c = comments.iter().cycle();
        for (i, token) in text.split_whitespace().enumerate() {
            out.push_str(c.next().unwrap());
            out.push(if (seed >> (i % 64)) & 1 == 1 { '\n' } else { ' ' });
            out.push_str(token);
            out.push_str("\t ");
        }
        prop_assert_eq!(parse_graph(&out).unwrap(), gr);
    }

    #[test]
    fn graph_round_trip(gr in partial_graph()) {
        let text = write_graph(&gr);
        let back = parse_graph(&text).unwrap();
        prop_assert_eq!(write_graph(&back), text);
        prop_assert_eq!(back, gr);
    }

    #[test]
    fn semigroup_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if let Some(s) = random_transformation_semigroup(&mut rng, 4, 2, 300) {
            let text = write_semigroup(&s);
            let back = parse_semigroup(&text).unwrap();
            prop_assert_eq!(write_semigroup(&back), text);
            prop_assert_eq!(back, s);
        }
    }

    #[test]
    fn one_testable_matches_width_one(gr in complete_graph(5, 2)) {
        let direct = is_1_testable(&gr).unwrap();
        let (oracle, _) = is_k_testable_graph(&gr, 1, BUDGET).unwrap();
        prop_assert_eq!(direct.is_yes(), oracle.is_yes());
    }

    #[test]
    fn k_testability_is_monotone(gr in complete_graph(4, 2)) {
        let mut previous = false;
        for k in 1..=4 {
            let (v, _) = is_k_testable_graph(&gr, k, BUDGET).unwrap();
            if matches!(v.holds, Holds::Unknown(_)) {
                break;
            }
            prop_assert!(!previous || v.is_yes(), "yes at k={} but not k={}", k - 1, k);
            previous = v.is_yes();
        }
    }

    #[test]
    fn local_witnesses_violate_the_law(gr in complete_graph(5, 2)) {
        let ts = transition_semigroup(&gr, 10_000).unwrap();
        let s = &ts.semigroup;
        for p in LocalPropertyId::ALL {
            let v = property_via_semigroup(&ts, p.property()).unwrap();
            let Some(Witness::Words(ws)) = v.witness else {
                prop_assert!(v.is_yes());
                continue;
            };
            let el: Vec<usize> = ws.iter().map(|w| ts.evaluate(w).unwrap()).collect();
            prop_assert_eq!(Some(el.clone()), v.elements);
            let e = el[0];
            prop_assert_eq!(s.mul(e, e), e);
            let sandwich = |x| s.mul3(e, x, e);
            prop_assert!(el[1..].iter().all(|&x| sandwich(x) == x));
            let x = el[1];
            if el.len() == 2 {
                prop_assert_ne!(s.mul(x, x), x);
            } else {
                let y = el[2];
                let holds = match p {
                    LocalPropertyId::LocallyIdempotent => true,
                    LocalPropertyId::LocallyTestable | LocalPropertyId::StrictlyLocallyTestable => s.mul(x, y) == s.mul(y, x),
                    LocalPropertyId::RightLocallyTestable => s.mul3(x, y, x) == s.mul(x, y),
                    LocalPropertyId::LeftLocallyTestable => s.mul3(x, y, x) == s.mul(y, x),
                };
                prop_assert!(!holds);
            }
        }
    }

    #[test]
    fn variety_inclusions(gr in complete_graph(5, 2)) {
        let ts = transition_semigroup(&gr, 10_000).unwrap();
        let yes = |p| property_via_semigroup(&ts, p).unwrap().is_yes();
        let lt = yes(Property::LocalTestability);
        prop_assert_eq!(lt, yes(Property::StrictLocalTestability));
        if lt {
            prop_assert!(yes(Property::RightLocalTestability));
            prop_assert!(yes(Property::LeftLocalTestability));
            prop_assert!(yes(Property::LocalIdempotence));
            prop_assert!(yes(Property::ThresholdLocalTestability));
        }
        if yes(Property::PiecewiseTestability) {
            prop_assert!(yes(Property::Aperiodicity));
        }
        if yes(Property::ThresholdLocalTestability) {
            prop_assert!(yes(Property::Aperiodicity));
        }
    }

    #[test]
    fn local_properties_match_naive(gr in complete_graph(6, 2)) {
        let naive = naive_transitions(&gr);
        prop_assume!(naive.elements.len() <= 30);
        let ts = transition_semigroup(&gr, 10_000).unwrap();
        let t = &naive.table;
        prop_assert_eq!(check_local_property(&ts.semigroup, LocalPropertyId::LocallyIdempotent).is_yes(), t.locally_idempotent());
        prop_assert_eq!(check_local_property(&ts.semigroup, LocalPropertyId::LocallyTestable).is_yes(), t.locally_testable());
        prop_assert_eq!(check_local_property(&ts.semigroup, LocalPropertyId::RightLocallyTestable).is_yes(), t.right_locally_testable());
        prop_assert_eq!(check_local_property(&ts.semigroup, LocalPropertyId::LeftLocallyTestable).is_yes(), t.left_locally_testable());
        let yes = |p| property_via_semigroup(&ts, p).unwrap().is_yes();
        prop_assert_eq!(yes(Property::Aperiodicity), t.aperiodic());
        prop_assert_eq!(yes(Property::ThresholdLocalTestability), t.threshold_locally_testable());
        prop_assert_eq!(yes(Property::PiecewiseTestability), t.j_trivial());
    }

    #[test]
    fn scan_agrees_with_profile_search(gr in complete_graph(4, 2), k in 1usize..=3, t in 1usize..=2) {
        let action = TransformationAction::new(&gr).unwrap();
        match profile_determines(&action, k, t, BUDGET).unwrap() {
            Determination::Determined { .. } => {
                prop_assert!(matches!(brute_force_scan(&action, k, t, 8).unwrap(), ScanResult::NoConflictUpTo(_)));
            }
            Determination::Conflict { first, second, .. } => {
                prop_assert_eq!(profile_of(&first, k, t), profile_of(&second, k, t));
                prop_assert_ne!(action.run(&first), action.run(&second));
                let scan = brute_force_scan(&action, k, t, second.len()).unwrap();
                prop_assert!(matches!(scan, ScanResult::Conflict(..)));
            }
            Determination::BudgetExceeded { .. } => {}
        }
    }

    #[test]
    fn product_semigroup_embeds_in_pair(g1 in complete_graph(4, 2), g2 in complete_graph(4, 2)) {
        let p = graph_direct_product(&g1, &g2).unwrap();
        let n = transition_semigroup(&p, 100_000).unwrap().semigroup.len();
        let a = g1.alphabet_size().min(g2.alphabet_size());
        let restrict = |g: &TransitionGraph| {
            let rows: Vec<Vec<usize>> = (0..g.node_count()).map(|q| g.row(q)[..a].iter().map(|c| c.unwrap()).collect()).collect();
            TransitionGraph::from_rows(&rows).unwrap()
        };
        let n1 = transition_semigroup(&restrict(&g1), 100_000).unwrap().semigroup.len();
        let n2 = transition_semigroup(&restrict(&g2), 100_000).unwrap().semigroup.len();
        prop_assert!(n <= n1 * n2, "{n} > {n1} * {n2}");
        prop_assert!(n >= n1.max(n2));
    }
}
