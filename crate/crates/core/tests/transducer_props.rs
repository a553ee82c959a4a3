mod common;

use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use reltrans::random::{random_rel, random_transducer, random_transducer_on, rng, subset, wire};
use reltrans::transducer::{compose_transducers, finite_shift_at, lift_transducer, product_transducers};
use reltrans::{Execution, UniformRelationSample};

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 96,
        rng_seed: RngSeed::Fixed(60),
        ..ProptestConfig::default()
    })]

    #[test]
    fn behaviors_match_run_oracle(seed in any::<u64>()) {
        let t = random_transducer(&mut rng(seed), 3, 2, 2);
        let oracle = common::behavior(&t, 4);
        prop_assert_eq!(&t.behavior_upto(4).pairs, &oracle);
        prop_assert_eq!(&t.behavior_via_shift_upto(4).pairs, &oracle);
    }

    #[test]
    fn shift_route_agrees_at_length_five(seed in any::<u64>()) {
        let t = random_transducer(&mut rng(seed), 3, 2, 2);
        let runs = t.behavior_upto(5);
        prop_assert_eq!(&runs, &t.behavior_via_shift_upto_with(5, Execution::Sequential));
        prop_assert_eq!(&runs, &t.behavior_via_shift_upto_with(5, Execution::Parallel));
    }

    #[test]
    fn finite_shift_matches_definition(seed in any::<u64>(), k in 0usize..4) {
        let mut r = rng(seed);
        let n = 3;
        let (i, f) = (subset(&mut r, n, 0.5), subset(&mut r, n, 0.5));
        prop_assert_eq!(finite_shift_at(n, &i, &f, k), common::finite_shift(n, &i, &f, k));
    }

    #[test]
    fn composition_and_product_behaviors(seed in any::<u64>()) {
        let mut r = rng(seed);
        let t1 = random_transducer(&mut r, 3, 2, 2);
        let c = wire("C", "c", 2);
        let q = wire("P", "p", r.gen_range(1..=2));
        let t2 = random_transducer_on(&mut r, t1.output(), &c, &q);
        let n = 4;
        let composed = compose_transducers(&t1, &t2).unwrap().behavior_upto(n);
        prop_assert_eq!(composed, t1.behavior_upto(n).then(&t2.behavior_upto(n)).unwrap());
        let prod = product_transducers(&t1, &t2).behavior_upto(n);
        prop_assert_eq!(prod, t1.behavior_upto(n).zip(&t2.behavior_upto(n)));
    }

    #[test]
    fn lift_is_functorial_and_faithful(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b, c) = (wire("A", "a", r.gen_range(1..=3)), wire("B", "b", r.gen_range(1..=3)), wire("C", "c", r.gen_range(1..=3)));
        let f = random_rel(&mut r, &a, &b, 0.4);
        let g = random_rel(&mut r, &b, &c, 0.4);
        let n = 4;
        let lifted = lift_transducer(&f.then(&g).unwrap()).behavior_upto(n);
        let separately = lift_transducer(&f).behavior_upto(n).then(&lift_transducer(&g).behavior_upto(n)).unwrap();
        prop_assert_eq!(&lifted, &separately);
        prop_assert_eq!(lifted, UniformRelationSample::lift(&f.then(&g).unwrap(), n));
        let h = random_rel(&mut r, &a, &b, 0.4);
        let same_letters = lift_transducer(&f).behavior_upto(1) == lift_transducer(&h).behavior_upto(1);
        prop_assert_eq!(same_letters, f == h);
    }
}

use rand::Rng;

#[test]
fn automaton_view_accepts_the_behavior() {
    let mut r = rng(11);
    for _ in 0..50 {
        let t = random_transducer(&mut r, 3, 2, 2);
        let aut = reltrans::Nfa::from_transducer(&t.to_automaton()).unwrap();
        let nb = t.output().size();
        let zipped: std::collections::BTreeSet<Vec<usize>> = t
            .behavior_upto(4)
            .pairs
            .iter()
            .map(|(w, v)| w.iter().zip(v).map(|(a, b)| a * nb + b).collect())
            .collect();
        assert_eq!(common::language(&aut, 4), zipped);
    }
}
