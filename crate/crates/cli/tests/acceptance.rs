//! End-to-end acceptance checks. Every check is exact; each criterion prints
//! one PASS/FAIL line and the test fails if any criterion does.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use reltrans::automata::{determinize, iso_check, minimize, nfa_equiv, Nfa};
use reltrans::diagram::{diagrams_equiv, interpret_direct_upto, interpret_upto, slide, SlideSide};
use reltrans::random::{self, random_diagram, DiagramShape, Mutation};
use reltrans::simulation::{certificate_for_determinization, certificate_for_minimization, check_fin, check_inf};
use reltrans::sofic::{
    backward_prune, canonical_form, canonical_forms_iso, determinize_presentation, factor_language, forward_prune,
    minimize_presentation, presentations_equiv, prune, CanonicalForm,
};
use reltrans::{Presentation, SimCertificate, SimMode};
use reltrans_cli::format::{self, Document};

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixtures() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut v: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    v.sort();
    v
}

fn behavior_agreement() -> Check {
    let mut rng = random::rng(101);
    let start = Instant::now();
    let ts: Vec<_> = (0..200).map(|_| random::random_transducer(&mut rng, 3, 2, 2)).collect();
    for (i, t) in ts.iter().enumerate() {
        let runs = t.behavior_upto(5);
        ensure(runs == t.behavior_via_shift_upto(5), || format!("transducer {i}: runs and shift differ"))?;
    }
    let elapsed = start.elapsed();
    // the brute-force oracle is slow, so it runs outside the timed part
    for (i, t) in ts.iter().enumerate() {
        ensure(t.behavior_upto(4).pairs == common::behavior(t, 4), || format!("transducer {i}: oracle differs"))?;
    }
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!("200 transducers, n=5, {:.2?}", elapsed))
}

fn determinization_minimization() -> Check {
    let mut rng = random::rng(202);
    for i in 0..200 {
        let n = random::random_nfa(&mut rng, 4, 2);
        let (d, _) = determinize(&n);
        let (m, _) = minimize(&d);
        let err = |e: reltrans::Error| e.to_string();
        ensure(nfa_equiv(&n, &d).map_err(err)?, || format!("nfa {i}: determinization changed the language"))?;
        ensure(nfa_equiv(&n, &m).map_err(err)?, || format!("nfa {i}: minimization changed the language"))?;
        ensure(common::distinguishing_word(&n, &m).is_none(), || format!("nfa {i}: oracle finds a difference"))?;
        let (mm, _) = minimize(&m);
        ensure(mm.num_states() == m.num_states() && iso_check(&m, &mm).is_some(), || {
            format!("nfa {i}: minimize is not idempotent")
        })?;
    }
    let chain = Nfa::build(
        &["a"],
        &["s", "t", "u"],
        &[("s", "a", "t"), ("t", "a", "u"), ("u", "a", "u")],
        &["s"],
        &["t", "u"],
    )
    .unwrap();
    let (m, _) = minimize(&determinize(&chain).0);
    ensure(m.num_states() == 2, || format!("a⁺ chain minimizes to {} states", m.num_states()))?;
    Ok("200 NFAs; a⁺ chain → 2 states".into())
}

fn certificate_validity() -> Check {
    let mut rng = random::rng(303);
    for i in 0..200 {
        let n = random::random_nfa(&mut rng, 4, 2);
        let (d, c) = certificate_for_determinization(&n);
        let r = check_fin(&n.to_transducer(), &d.to_transducer(), &c).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("nfa {i}: determinization certificate fails: {r:?}"))?;
        let (m, c) = certificate_for_minimization(&d).map_err(|e| e.to_string())?;
        let r = check_fin(&m.to_transducer(), &d.to_transducer(), &c).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("nfa {i}: minimization certificate fails: {r:?}"))?;
    }
    let mut passes = 0;
    for i in 0..500 {
        let (m1, m2, s) = random::random_sim_triple(&mut rng);
        let cert = SimCertificate::new(s, SimMode::TwoSided);
        if check_fin(&m1, &m2, &cert).map_err(|e| e.to_string())?.passed() {
            passes += 1;
            ensure(common::behavior(&m1, 5) == common::behavior(&m2, 5), || {
                format!("triple {i}: two-sided pass with different behaviors")
            })?;
        }
    }
    ensure(passes >= 50, || format!("only {passes} passing triples; the check is vacuous"))?;
    Ok(format!("400 generated certificates; 500 triples, {passes} passes, all sound"))
}

fn completeness_pipeline() -> Check {
    let mut rng = random::rng(404);
    let mut seen = BTreeSet::new();
    for i in 0..100 {
        let d = random_diagram(&mut rng, DiagramShape::default());
        let (m, used) = random::mutate(&mut rng, &d);
        seen.extend(used);
        let (eq, cert) = diagrams_equiv(&d, &m).map_err(|e| e.to_string())?;
        ensure(eq, || format!("mutation pair {i}: not equivalent"))?;
        ensure(cert.verify().map_err(|e| e.to_string())?, || format!("mutation pair {i}: certificate chain fails"))?;
        let (a, b) = (interpret_upto(&d, 6), interpret_upto(&m, 6));
        ensure(a == b, || format!("mutation pair {i}: samples differ"))?;
    }
    for needed in [Mutation::Slide, Mutation::FeedbackMerge, Mutation::BoxMerge] {
        ensure(seen.contains(&needed), || format!("mutation {needed:?} never applied"))?;
    }
    let (mut pairs, mut differing) = (0, 0);
    while pairs < 100 {
        let d = random_diagram(&mut rng, DiagramShape::default());
        let Some(altered) = random::alter_box(&mut rng, &d) else {
            continue;
        };
        pairs += 1;
        let a = interpret_upto(&d, 6).map_err(|e| e.to_string())?;
        let b = interpret_upto(&altered, 6).map_err(|e| e.to_string())?;
        ensure(interpret_direct_upto(&d, 4).map_err(|e| e.to_string())? == a.truncate(4), || {
            format!("altered pair {pairs}: normal form and direct semantics disagree")
        })?;
        let (eq, _) = diagrams_equiv(&d, &altered).map_err(|e| e.to_string())?;
        if a != b {
            differing += 1;
            ensure(!eq, || format!("altered pair {pairs}: samples differ but judged equal"))?;
        }
        if eq {
            ensure(a == b, || format!("altered pair {pairs}: judged equal but samples differ"))?;
        }
    }
    ensure(differing >= 20, || format!("only {differing} altered pairs differ"))?;
    Ok(format!("100 mutation pairs; 100 altered pairs ({differing} differ at n=6)"))
}

fn sliding() -> Check {
    let mut rng = random::rng(505);
    for i in 0..50 {
        let inst = random::random_slide_instance(&mut rng);
        let (before, after) =
            slide(&inst.s, &inst.body, &inst.initial, &inst.fin, SlideSide::Left).map_err(|e| e.to_string())?;
        let (eq, _) = diagrams_equiv(&before, &after).map_err(|e| e.to_string())?;
        ensure(eq, || format!("slide {i}: sides differ"))?;
        ensure(interpret_upto(&before, 4) == interpret_upto(&after, 4), || format!("slide {i}: samples differ"))?;
    }
    Ok("50 slides".into())
}

fn pruning_algebra() -> Check {
    let mut rng = random::rng(606);
    for i in 0..200 {
        let p = random::random_presentation(&mut rng, 5, 2);
        let full = prune(&p);
        let fb = forward_prune(&backward_prune(&p));
        let bf = backward_prune(&forward_prune(&p));
        ensure(full.state_names() == fb.state_names() && fb.state_names() == bf.state_names(), || {
            format!("presentation {i}: pruning orders disagree")
        })?;
        for (name, op) in [
            ("prune", prune as fn(&Presentation) -> Presentation),
            ("forward", forward_prune),
            ("backward", backward_prune),
        ] {
            let once = op(&p);
            ensure(op(&once) == once, || format!("presentation {i}: {name} not idempotent"))?;
        }
        // oracle: the kept states are those on arbitrarily long paths both ways
        let edges: BTreeSet<(usize, usize)> = p.trans().iter().map(|&(a, _, b)| (a, b)).collect();
        let len = p.num_states() + 1;
        let expected: BTreeSet<String> = (0..p.num_states())
            .filter(|&q| common::starts_path(&edges, q, len) && common::ends_path(&edges, q, len))
            .map(|q| p.states().render(q))
            .collect();
        ensure(full.state_names() == expected, || format!("presentation {i}: oracle disagrees"))?;
    }
    Ok("200 presentations".into())
}

fn golden_mean() -> Check {
    let gm = Presentation::build(&["a", "b"], &["0", "1"], &[("0", "a", "0"), ("0", "b", "1"), ("1", "a", "0")]).unwrap();
    let (det, _) = determinize_presentation(&gm).map_err(|e| e.to_string())?;
    ensure(det.presentation.num_states() == 3, || format!("{} subsets", det.presentation.num_states()))?;
    ensure(det.presentation.states().render(det.root) == "{0,1}", || "root is not {0,1}".into())?;
    let (min, lmap) = minimize_presentation(&det).map_err(|e| e.to_string())?;
    ensure(min.presentation.num_states() == 2, || format!("{} minimal states", min.presentation.num_states()))?;
    ensure(lmap.s.contains(det.root, min.root), || "minimal root is not the class of {0,1}".into())?;
    // oracle: {0,1} and {0} share a follow language, {1} does not
    let dfa = det.to_dfa().map_err(|e| e.to_string())?;
    let follow = |name: &str| {
        let q = det.presentation.states().parse_rendered(name).unwrap();
        common::follow_language(dfa.as_nfa(), q, 6)
    };
    ensure(follow("{0,1}") == follow("{0}") && follow("{0,1}") != follow("{1}"), || {
        "follow languages do not match the expected classes".into()
    })?;
    let other = Presentation::build(
        &["a", "b"],
        &["x", "y", "z"],
        &[("x", "a", "y"), ("y", "a", "x"), ("x", "b", "z"), ("y", "b", "z"), ("z", "a", "x"), ("z", "a", "y")],
    )
    .unwrap();
    let (c1, c2) = (canonical_form(&gm), canonical_form(&other));
    ensure(matches!(c2, CanonicalForm::Rooted(_)) && canonical_forms_iso(&c1, &c2), || {
        "canonical forms of the two presentations are not isomorphic".into()
    })?;
    Ok("3 subsets, 2 minimal states, canonical forms isomorphic".into())
}

fn subshift_equivalence() -> Check {
    let mut rng = random::rng(808);
    let mut equal = 0;
    for i in 0..100 {
        let (p1, p2, _) = random::random_inf_triple(&mut rng);
        let e = presentations_equiv(&p1, &p2).map_err(|e| e.to_string())?;
        let (f1, f2) = (factor_language(&prune(&p1)), factor_language(&prune(&p2)));
        ensure(e == nfa_equiv(&f1, &f2).map_err(|e| e.to_string())?, || format!("pair {i}: disagrees with factor languages"))?;
        ensure(e == common::distinguishing_word(&f1, &f2).is_none(), || format!("pair {i}: disagrees with the oracle"))?;
        equal += e as usize;
    }
    ensure((10..=90).contains(&equal), || format!("{equal} of 100 pairs equal; the check is one-sided"))?;
    Ok(format!("100 pairs, {equal} equal"))
}

fn infinite_certificates() -> Check {
    let mut checked = 0;
    for f in fixtures() {
        let Ok(Document::Presentation { presentation, .. }) = format::read_document(&f) else {
            continue;
        };
        let p = prune(&presentation);
        if p.is_empty() {
            continue;
        }
        let (det, c1) = determinize_presentation(&p).map_err(|e| e.to_string())?;
        let r = check_inf(&p.to_ztransducer(), &det.presentation.to_ztransducer(), &c1).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("{}: determinization certificate fails", f.display()))?;
        let (min, c2) = minimize_presentation(&det).map_err(|e| e.to_string())?;
        let r = check_inf(&min.presentation.to_ztransducer(), &det.presentation.to_ztransducer(), &c2)
            .map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("{}: minimization certificate fails", f.display()))?;
        checked += 1;
    }
    ensure(checked >= 5, || format!("only {checked} presentation fixtures"))?;
    let mut rng = random::rng(909);
    let mut passes = 0;
    for i in 0..200 {
        let (p1, p2, s) = random::random_inf_triple(&mut rng);
        let cert = SimCertificate::new(s, SimMode::TwoSided);
        if check_inf(&p1.to_ztransducer(), &p2.to_ztransducer(), &cert).map_err(|e| e.to_string())?.passed() {
            passes += 1;
            let (f1, f2) = (factor_language(&prune(&p1)), factor_language(&prune(&p2)));
            ensure(common::distinguishing_word(&f1, &f2).is_none(), || format!("triple {i}: unsound pass"))?;
        }
    }
    ensure(passes >= 20, || format!("only {passes} passes"))?;
    Ok(format!("{checked} fixtures; 200 triples, {passes} passes, all sound"))
}

fn cli() -> Check {
    let bin = env!("CARGO_BIN_EXE_reltrans");
    let run = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let files = fixtures();
    ensure(files.len() >= 30, || format!("{} fixtures", files.len()))?;
    let mut behaviors = 0;
    for f in &files {
        let path = f.to_str().unwrap();
        let text = std::fs::read_to_string(f).unwrap();
        let o = run(&["fmt", path]);
        ensure(o.status.code() == Some(0) && o.stdout == text.as_bytes(), || format!("{path}: round trip"))?;
        let doc = format::read_document(f).map_err(|e| e.to_string())?;
        if matches!(doc, Document::Transducer(_) | Document::Nfa(_) | Document::Dfa(_) | Document::Diagram(_)) {
            let shift = run(&["behavior", path, "--max-len", "4", "--via", "shift"]);
            let runs = run(&["behavior", path, "--max-len", "4", "--via", "runs"]);
            ensure(shift.status.success() && shift.stdout == runs.stdout, || format!("{path}: behavior routes differ"))?;
            behaviors += 1;
        }
        let expected = match doc.kind() {
            "alphabet" | "relation" | "certificate" => 2,
            _ => 0,
        };
        let o = run(&["equiv", path, path]);
        ensure(o.status.code() == Some(expected), || format!("{path}: equiv exit {:?}", o.status.code()))?;
    }
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let fx = |n: &str| dir.join(format!("{n}.json")).to_str().unwrap().to_string();
    let codes = [
        (run(&["equiv", &fx("nfa_aplus_1"), &fx("nfa_aplus_2")]), 0),
        (run(&["equiv", &fx("nfa_aplus_1"), &fx("nfa_astar")]), 1),
        (run(&["check-sim", &fx("m"), &fx("m"), &fx("id_cert"), "--mode", "two-sided"]), 0),
        (run(&["periodic", &fx("golden_mean"), "b"]), 1),
        (run(&["equiv", &fx("nfa_aplus_1"), &fx("golden_mean")]), 2),
        (run(&["fmt", "/nonexistent/file.json"]), 2),
    ];
    for (i, (o, want)) in codes.iter().enumerate() {
        ensure(o.status.code() == Some(*want), || format!("exit-code case {i}: {:?}", o.status.code()))?;
    }
    Ok(format!("{} fixtures round-trip; {behaviors} byte-identical behaviors; exit codes 0/1/2", files.len()))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("behavior agreement", behavior_agreement),
        ("determinization and minimization", determinization_minimization),
        ("certificate validity", certificate_validity),
        ("diagram completeness pipeline", completeness_pipeline),
        ("sliding", sliding),
        ("pruning algebra", pruning_algebra),
        ("golden-mean canonical form", golden_mean),
        ("subshift equivalence", subshift_equivalence),
        ("infinite certificates", infinite_certificates),
        ("cli", cli),
    ];
    // written to the real stdout so the lines show up without --nocapture
    let mut out = std::io::stdout().lock();
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let line = match check() {
            Ok(detail) => format!("PASS {:>2} {name}: {detail}\n", i + 1),
            Err(why) => {
                failed.push(i + 1);
                format!("FAIL {:>2} {name}: {why}\n", i + 1)
            }
        };
        out.write_all(line.as_bytes()).unwrap();
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
