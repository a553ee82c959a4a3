mod common;

use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use reltrans::automata::{determinize, nfa_equiv};
use reltrans::random::{random_inf_triple, random_nfa, random_sim_triple, rng};
use reltrans::simulation::{
    certificate_for_determinization, certificate_for_minimization, check_fin, check_inf, recheck_fin, recheck_inf,
};
use reltrans::sofic::factor_language;
use reltrans::{SimCertificate, SimMode};

const MODES: [SimMode; 3] = [SimMode::TwoSided, SimMode::Backward, SimMode::Forward];

#[test]
fn finite_soundness() {
    let mut r = rng(0x5eed);
    let mut passes = [0usize; 3];
    for _ in 0..500 {
        let (m1, m2, s) = random_sim_triple(&mut r);
        let (b1, b2) = (common::behavior(&m1, 5), common::behavior(&m2, 5));
        for (k, mode) in MODES.into_iter().enumerate() {
            let cert = SimCertificate::new(s.clone(), mode);
            let report = check_fin(&m1, &m2, &cert).unwrap();
            if report.passed() {
                passes[k] += 1;
                match mode {
                    SimMode::TwoSided => assert_eq!(b1, b2),
                    SimMode::Backward => assert!(b1.is_subset(&b2)),
                    SimMode::Forward => assert!(b2.is_subset(&b1)),
                }
            } else {
                assert!(recheck_fin(&m1, &m2, &cert, &report), "{report:?}");
            }
        }
    }
    // the corpus must exercise passing certificates, not only failures
    assert!(passes.iter().all(|&p| p >= 50), "{passes:?}");
}

#[test]
fn infinite_soundness() {
    let mut r = rng(0xface);
    let mut passes = 0;
    for _ in 0..300 {
        let (p1, p2, s) = random_inf_triple(&mut r);
        let (z1, z2) = (p1.to_ztransducer(), p2.to_ztransducer());
        let (f1, f2) = (factor_language(&p1), factor_language(&p2));
        for mode in MODES {
            let cert = SimCertificate::new(s.clone(), mode);
            let report = check_inf(&z1, &z2, &cert).unwrap();
            if !report.passed() {
                assert!(recheck_inf(&z1, &z2, &cert, &report), "{report:?}");
                continue;
            }
            let (l1, l2) = (f1.language_upto(6), f2.language_upto(6));
            match mode {
                SimMode::TwoSided => {
                    passes += 1;
                    assert!(nfa_equiv(&f1, &f2).unwrap());
                }
                SimMode::Backward => assert!(l1.is_subset(&l2)),
                SimMode::Forward => assert!(l2.is_subset(&l1)),
            }
        }
    }
    assert!(passes >= 50, "{passes}");
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 200,
        rng_seed: RngSeed::Fixed(40),
        ..ProptestConfig::default()
    })]

    #[test]
    fn generated_certificates_pass(seed in any::<u64>()) {
        let n = random_nfa(&mut rng(seed), 4, 2);
        let (d, c) = certificate_for_determinization(&n);
        prop_assert!(check_fin(&n.to_transducer(), &d.to_transducer(), &c).unwrap().passed());
        let (m, c2) = certificate_for_minimization(&d).unwrap();
        prop_assert!(check_fin(&m.to_transducer(), &d.to_transducer(), &c2).unwrap().passed());
        prop_assert!(nfa_equiv(&n, m.as_nfa()).unwrap());
    }

    #[test]
    fn transposed_certificates_are_not_trusted(seed in any::<u64>()) {
        // reading the certificate the other way round must not make unequal
        // machines pass
        let n = random_nfa(&mut rng(seed), 4, 2);
        let (d, contains) = determinize(&n);
        let flipped = SimCertificate::new(contains.transpose(), SimMode::TwoSided);
        if let Ok(report) = check_fin(&d.to_transducer(), &n.to_transducer(), &flipped) {
            if report.passed() {
                prop_assert!(nfa_equiv(&n, d.as_nfa()).unwrap());
            }
        }
    }
}
