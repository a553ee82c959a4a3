mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use reltrans::automata::{nfa_equiv, prune_language};
use reltrans::random::{random_presentation, random_presentation_on, rng, wire};
use reltrans::simulation::check_inf;
use reltrans::sofic::{
    backward_prune, canonical_form, canonical_forms_iso, determinize_presentation, factor_language, factors_upto,
    forward_prune, minimize_presentation, periodic_membership, presentations_equiv, prune,
};
use reltrans::{CanonicalForm, Presentation};

fn edges(p: &Presentation) -> BTreeSet<(usize, usize)> {
    p.trans().iter().map(|&(s, _, t)| (s, t)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 200,
        rng_seed: RngSeed::Fixed(50),
        ..ProptestConfig::default()
    })]

    #[test]
    fn pruning_algebra(seed in any::<u64>()) {
        let p = random_presentation(&mut rng(seed), 5, 2);
        let full = prune(&p).state_names();
        prop_assert_eq!(&forward_prune(&backward_prune(&p)).state_names(), &full);
        prop_assert_eq!(&backward_prune(&forward_prune(&p)).state_names(), &full);
        for op in [forward_prune, backward_prune, prune] {
            let once = op(&p);
            prop_assert_eq!(&op(&once), &once);
            prop_assert!(once.state_names().is_subset(&p.state_names()));
        }
    }

    #[test]
    fn pruning_matches_path_enumeration(seed in any::<u64>()) {
        let p = random_presentation(&mut rng(seed), 5, 2);
        let e = edges(&p);
        let n = p.num_states();
        let expect: BTreeSet<String> = (0..n)
            .filter(|&q| common::starts_path(&e, q, n) && common::ends_path(&e, q, n))
            .map(|q| p.states().render(q))
            .collect();
        prop_assert_eq!(prune(&p).state_names(), expect);
    }

    #[test]
    fn state_pruning_matches_language_pruning(seed in any::<u64>()) {
        let p = random_presentation(&mut rng(seed), 5, 2);
        prop_assert!(nfa_equiv(&factor_language(&p), &prune_language(&p.to_nfa())).unwrap());
    }

    #[test]
    fn canonical_forms_are_stable(seed in any::<u64>()) {
        let p = random_presentation(&mut rng(seed), 5, 2);
        let c = canonical_form(&p);
        if let CanonicalForm::Rooted(r) = &c {
            prop_assert!(r.presentation.is_right_resolving());
            prop_assert!(r.is_rooted());
            let again = canonical_form(&r.presentation);
            prop_assert!(canonical_forms_iso(&c, &again));
        }
    }

    #[test]
    fn canonical_iso_iff_equal_factor_languages(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = wire("A", "a", 2);
        let p1 = random_presentation_on(&mut r, &a, &wire("Q", "q", 3));
        let p2 = if r.gen_bool(0.5) {
            random_presentation_on(&mut r, &a, &wire("Q", "q", 3))
        } else {
            // same subshift, different presentation
            Presentation::from_nfa(&p1.to_nfa().union(&prune(&p1).to_nfa()).unwrap())
        };
        let by_languages = nfa_equiv(&factor_language(&p1), &factor_language(&p2)).unwrap();
        prop_assert_eq!(presentations_equiv(&p1, &p2).unwrap(), by_languages);
    }

    #[test]
    fn inf_certificates_pass(seed in any::<u64>()) {
        let p = prune(&random_presentation(&mut rng(seed), 5, 2));
        if !p.is_empty() {
            let (det, c1) = determinize_presentation(&p).unwrap();
            prop_assert!(check_inf(&p.to_ztransducer(), &det.presentation.to_ztransducer(), &c1).unwrap().passed());
            let (min, c2) = minimize_presentation(&det).unwrap();
            prop_assert!(check_inf(&min.presentation.to_ztransducer(), &det.presentation.to_ztransducer(), &c2).unwrap().passed());
        }
    }

    #[test]
    fn factor_samples_extend_both_ways(seed in any::<u64>()) {
        let p = random_presentation(&mut rng(seed), 4, 2);
        let k = 5;
        let sample = factors_upto(&p, k);
        let na = p.alphabet().size();
        for w in sample.iter().filter(|w| w.len() < k) {
            for i in 0..w.len() {
                prop_assert!(sample.contains(&w[i..].to_vec()) && sample.contains(&w[..i].to_vec()));
            }
            let right = (0..na).any(|a| { let mut x = w.clone(); x.push(a); sample.contains(&x) });
            let left = (0..na).any(|a| { let mut x = vec![a]; x.extend(w); sample.contains(&x) });
            prop_assert!(right && left);
        }
    }

    #[test]
    fn periodic_points_match_long_factors(seed in any::<u64>(), len in 1usize..3) {
        let mut r = rng(seed);
        let p = random_presentation(&mut r, 4, 2);
        let w: Vec<usize> = (0..len).map(|_| r.gen_range(0..p.alphabet().size())).collect();
        let n = p.num_states().max(1);
        // …www… is in the subshift iff w^m is a factor for every m; a run of
        // w^(n+1) in the pruned presentation repeats a state at a w-boundary
        let power: Vec<usize> = w.iter().copied().cycle().take(w.len() * (n + 1)).collect();
        let factor = factor_language(&p).accepts(&power);
        prop_assert_eq!(periodic_membership(&p, &w).unwrap(), factor);
    }
}

use rand::Rng;

#[test]
fn golden_mean_follow_languages() {
    let gm = Presentation::build(&["a", "b"], &["0", "1"], &[("0", "a", "0"), ("0", "b", "1"), ("1", "a", "0")]).unwrap();
    let (det, _) = determinize_presentation(&gm).unwrap();
    let dfa = det.to_dfa().unwrap();
    let follow = |name: &str| common::follow_language(dfa.as_nfa(), det.presentation.states().parse_rendered(name).unwrap(), 6);
    assert_eq!(follow("{0,1}"), follow("{0}"));
    assert_ne!(follow("{0,1}"), follow("{1}"));
    let (min, _) = minimize_presentation(&det).unwrap();
    assert_eq!(min.presentation.num_states(), 2);
}
