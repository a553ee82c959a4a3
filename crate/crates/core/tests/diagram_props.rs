mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use reltrans::automata::nfa_equiv;
use reltrans::diagram::{
    bent_automaton, diagrams_equiv, encode_transducer, interpret_direct_upto, interpret_upto, slide, SlideSide,
};
use reltrans::random::{
    alter_box, mutate, random_diagram, random_slide_instance, random_transducer_on, rng, wire, DiagramShape,
};

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 64,
        rng_seed: RngSeed::Fixed(20),
        ..ProptestConfig::default()
    })]

    #[test]
    fn both_semantics_agree(seed in any::<u64>()) {
        let d = random_diagram(&mut rng(seed), DiagramShape::default());
        prop_assert_eq!(interpret_upto(&d, 5).unwrap(), interpret_direct_upto(&d, 5).unwrap());
    }

    #[test]
    fn equivalence_is_exact(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d1 = random_diagram(&mut r, DiagramShape::default());
        let d2 = if r.gen_bool(0.5) {
            alter_box(&mut r, &d1).unwrap_or_else(|| random_diagram(&mut r, DiagramShape::default()))
        } else {
            random_diagram(&mut r, DiagramShape::default())
        };
        let (eq, cert) = diagrams_equiv(&d1, &d2).unwrap();
        prop_assert!(cert.is_valid().unwrap());
        prop_assert_eq!(cert.verify().unwrap(), eq);
        let (n1, n2) = (bent_automaton(&d1).unwrap(), bent_automaton(&d2).unwrap());
        match common::distinguishing_word(&n1, &n2) {
            None => prop_assert!(eq),
            Some(w) => {
                prop_assert!(!eq);
                prop_assert_ne!(n1.accepts(&w), n2.accepts(&w));
            }
        }
        if eq {
            prop_assert_eq!(interpret_upto(&d1, 6).unwrap(), interpret_upto(&d2, 6).unwrap());
        }
    }

    #[test]
    fn mutations_are_equivalent(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = random_diagram(&mut r, DiagramShape::default());
        let (m, _) = mutate(&mut r, &d);
        prop_assert!(diagrams_equiv(&d, &m).unwrap().0);
    }

    #[test]
    fn universality_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b) = (wire("A", "a", 2), wire("B", "b", 2));
        let (q1, q2) = (wire("Q", "q", r.gen_range(1..=3)), wire("Q", "q", r.gen_range(1..=3)));
        let t1 = random_transducer_on(&mut r, &a, &b, &q1);
        let t2 = random_transducer_on(&mut r, &a, &b, &q2);
        let by_diagrams = diagrams_equiv(&encode_transducer(&t1), &encode_transducer(&t2)).unwrap().0;
        let aut = |t: &reltrans::Transducer| reltrans::Nfa::from_transducer(&t.to_automaton()).unwrap();
        prop_assert_eq!(by_diagrams, nfa_equiv(&aut(&t1), &aut(&t2)).unwrap());
    }

    #[test]
    fn sliding_sides_are_equivalent(seed in any::<u64>()) {
        let mut r = rng(seed);
        let inst = random_slide_instance(&mut r);
        for side in [SlideSide::Left, SlideSide::Right] {
            let (l, rr) = slide(&inst.s, &inst.body, &inst.initial, &inst.fin, side).unwrap();
            prop_assert!(diagrams_equiv(&l, &rr).unwrap().0);
            prop_assert_eq!(interpret_upto(&l, 4).unwrap(), interpret_direct_upto(&rr, 4).unwrap());
        }
    }
}

use rand::Rng;

#[test]
fn bent_automaton_reads_output_then_input() {
    let mut r = rng(5);
    let d = random_diagram(&mut r, DiagramShape::default());
    let n = bent_automaton(&d).unwrap();
    let sample = interpret_upto(&d, 4).unwrap();
    let nb = sample.output.size();
    let na = sample.input.size();
    let expected: BTreeSet<Vec<usize>> = sample
        .pairs
        .iter()
        .map(|(w, v)| v.iter().zip(w).map(|(b, a)| b * na + a).collect())
        .collect();
    assert_eq!(nb * na, n.alphabet().size());
    assert_eq!(common::language(&n, 4), expected);
}
