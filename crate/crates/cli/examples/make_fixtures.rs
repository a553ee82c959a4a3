//! Regenerates the fixture corpus under `tests/fixtures`:
//!
//!     cargo run -p reltrans-cli --example make_fixtures -- crates/cli/tests/fixtures

use std::collections::BTreeSet;
use std::path::PathBuf;

use reltrans::automata::{determinize, minimize};
use reltrans::diagram::{encode_transducer, encode_ztransducer, slide, SlideSide};
use reltrans::random::{self, DiagramShape};
use reltrans::simulation::certificate_for_determinization;
use reltrans::{
    Alphabet, Diagram, Nfa, Obj, Presentation, Rel, SimCertificate, SimMode, Term, Transducer, ZTransducer,
};
use reltrans_cli::format::{self, Document};

fn ab() -> Obj {
    Obj::wire(Alphabet::new("A", ["a", "b"]).unwrap())
}

fn states(names: &[&str]) -> Obj {
    Obj::wire(Alphabet::new("Q", names.iter().copied()).unwrap())
}

fn set(xs: &[usize]) -> BTreeSet<usize> {
    xs.iter().copied().collect()
}

fn swap_transducer() -> Transducer {
    let q = states(&["q"]);
    let t = Rel::from_rendered(ab().concat(&q), ab().concat(&q), &[("(a,q)", "(b,q)"), ("(b,q)", "(a,q)")]).unwrap();
    Transducer::new(ab(), ab(), q, t, set(&[0]), set(&[0])).unwrap()
}

/// Outputs the previous letter; the first output is `a`.
fn delay_transducer() -> Transducer {
    let q = Obj::wire(Alphabet::new("Q", ["a", "b"]).unwrap());
    let mut pairs = Vec::new();
    for x in 0..2 {
        for p in 0..2 {
            pairs.push((x * 2 + p, p * 2 + x));
        }
    }
    let t = Rel::new(ab().concat(&q), ab().concat(&q), pairs).unwrap();
    Transducer::new(ab(), ab(), q, t, set(&[0]), set(&[0, 1])).unwrap()
}

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "crates/cli/tests/fixtures".into()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut count = 0;
    let mut write = |name: &str, doc: Document| {
        let path = dir.join(format!("{name}.json"));
        std::fs::write(&path, format::to_canonical_string(&format::to_value(&doc))).unwrap();
        count += 1;
    };
    let mut rng = random::rng(2024);

    // alphabets and relations
    write("alphabet_ab", Document::Alphabet(Alphabet::new("A", ["a", "b"]).unwrap()));
    write("alphabet_colors", Document::Alphabet(Alphabet::new("Color", ["red", "green", "blue"]).unwrap()));
    write("relation_swap", Document::Relation(Rel::swap(&ab(), &ab())));
    write("relation_cap", Document::Relation(Rel::cap(&ab())));
    write("relation_random", Document::Relation(random::random_rel(&mut rng, &ab(), &ab().concat(&ab()), 0.4)));

    // finite-word machines
    let swap = swap_transducer();
    write("swap", Document::Transducer(swap.clone()));
    write("m", Document::Transducer(swap.clone()));
    write(
        "id_cert",
        Document::Certificate(SimCertificate::new(Rel::identity(swap.states()), SimMode::TwoSided)),
    );
    write("delay", Document::Transducer(delay_transducer()));
    for i in 0..3 {
        write(&format!("transducer_random_{i}"), Document::Transducer(random::random_transducer(&mut rng, 3, 2, 2)));
    }

    let aplus1 = Nfa::build(&["a"], &["0", "1"], &[("0", "a", "1"), ("1", "a", "1")], &["0"], &["1"]).unwrap();
    let aplus2 = Nfa::build(
        &["a"],
        &["s", "t", "u"],
        &[("s", "a", "t"), ("s", "a", "u"), ("t", "a", "u"), ("u", "a", "u"), ("u", "a", "t")],
        &["s"],
        &["t", "u"],
    )
    .unwrap();
    let astar = Nfa::build(&["a"], &["0"], &[("0", "a", "0")], &["0"], &["0"]).unwrap();
    write("nfa_aplus_1", Document::Nfa(aplus1.clone()));
    write("nfa_aplus_2", Document::Nfa(aplus2.clone()));
    write("nfa_astar", Document::Nfa(astar));
    let ends_ab = Nfa::build(
        &["a", "b"],
        &["0", "1", "2"],
        &[("0", "a", "0"), ("0", "b", "0"), ("0", "a", "1"), ("1", "b", "2")],
        &["0"],
        &["2"],
    )
    .unwrap();
    write("nfa_ends_ab", Document::Nfa(ends_ab.clone()));
    write("nfa_empty_language", Document::Nfa(Nfa::build(&["a", "b"], &["0"], &[("0", "a", "0")], &["0"], &[]).unwrap()));
    for i in 0..3 {
        write(&format!("nfa_random_{i}"), Document::Nfa(random::random_nfa(&mut rng, 4, 2)));
    }
    let (det, cert) = certificate_for_determinization(&aplus2);
    write("dfa_aplus_2_det", Document::Dfa(det.clone()));
    write("cert_det_aplus_2", Document::Certificate(cert));
    write("dfa_ends_ab_min", Document::Dfa(minimize(&determinize(&ends_ab).0).0));

    // presentations
    let golden = Presentation::build(&["a", "b"], &["0", "1"], &[("0", "a", "0"), ("0", "b", "1"), ("1", "a", "0")]).unwrap();
    let golden2 = Presentation::build(
        &["a", "b"],
        &["x", "y", "z"],
        &[("x", "a", "y"), ("y", "a", "x"), ("x", "b", "z"), ("y", "b", "z"), ("z", "a", "x"), ("z", "a", "y")],
    )
    .unwrap();
    write("golden_mean", Document::Presentation { presentation: golden.clone(), root: None });
    write("golden_mean_2", Document::Presentation { presentation: golden2, root: None });
    let even = Presentation::build(&["a", "b"], &["0", "1"], &[("0", "a", "0"), ("0", "b", "1"), ("1", "b", "0")]).unwrap();
    write("even_shift", Document::Presentation { presentation: even, root: None });
    let full = Presentation::build(&["a", "b"], &["0"], &[("0", "a", "0"), ("0", "b", "0")]).unwrap();
    write("full_shift", Document::Presentation { presentation: full.clone(), root: None });
    write("full_shift_rooted", Document::Presentation { presentation: full, root: Some(0) });
    let acyclic = Presentation::build(&["a", "b"], &["0", "1"], &[("0", "a", "1")]).unwrap();
    write("acyclic", Document::Presentation { presentation: acyclic, root: None });
    let tail = Presentation::build(
        &["a", "b"],
        &["0", "1", "2"],
        &[("0", "b", "1"), ("1", "a", "1"), ("1", "b", "2")],
    )
    .unwrap();
    write("presentation_with_tails", Document::Presentation { presentation: tail, root: None });
    for i in 0..3 {
        write(
            &format!("presentation_random_{i}"),
            Document::Presentation { presentation: random::random_presentation(&mut rng, 4, 2), root: None },
        );
    }

    // bi-infinite transducers
    write("ztransducer_swap", Document::ZTransducer(ZTransducer::from_transducer(&swap)));
    write("ztransducer_delay", Document::ZTransducer(ZTransducer::from_transducer(&delay_transducer())));

    // diagrams
    let swap_box: Diagram = Term::Box(Rel::from_rendered(ab(), ab(), &[("a", "b"), ("b", "a")]).unwrap());
    write("diagram_swap_box", Document::Diagram(swap_box.clone()));
    write("diagram_swap_encoded", Document::Diagram(encode_transducer(&swap)));
    write("diagram_delay", Document::Diagram(encode_transducer(&delay_transducer())));
    write("diagram_swap_twice", Document::Diagram(swap_box.clone().seq(swap_box.clone())));
    write(
        "diagram_par",
        Document::Diagram(swap_box.clone().par(Term::Id(ab())).seq(Term::Swap(ab(), ab()))),
    );
    let q = states(&["p", "q"]);
    let s = Rel::from_function(q.clone(), q.clone(), &[1, 0]).unwrap();
    let body = encode_transducer(&delay_transducer());
    let body = match body {
        Term::Feedback { body, .. } => *body,
        _ => unreachable!(),
    };
    let body = Term::Box(body_rel(&body));
    let (before, after) = slide(&s, &body, &set(&[0]), &set(&[0, 1]), SlideSide::Left).unwrap();
    write("diagram_slide_before", Document::Diagram(before));
    write("diagram_slide_after", Document::Diagram(after));
    for i in 0..2 {
        let d = random::random_diagram(&mut rng, DiagramShape::default());
        let (m, _) = random::mutate(&mut rng, &d);
        write(&format!("diagram_random_{i}"), Document::Diagram(d));
        write(&format!("diagram_random_{i}_mutated"), Document::Diagram(m));
    }
    write("zdiagram_delay", Document::ZDiagram(encode_ztransducer(&ZTransducer::from_transducer(&delay_transducer()))));
    let acyclic_body: Term<()> = Term::Box(Rel::from_rendered(ab().concat(&ab()), ab().concat(&ab()), &[("(a,a)", "(b,b)")]).unwrap());
    write("zdiagram_acyclic", Document::ZDiagram(Term::feedback(ab(), (), acyclic_body)));
    write("zdiagram_empty_box", Document::ZDiagram(Term::Box(Rel::empty(ab(), ab()))));

    eprintln!("wrote {count} fixtures to {}", dir.display());
}

/// The delay body with its state wire renamed to `Q = {p, q}`.
fn body_rel(r: &Term<reltrans::Labels>) -> Rel {
    let Term::Box(r) = r else { unreachable!() };
    let q = states(&["p", "q"]);
    r.retyped(ab().concat(&q), ab().concat(&q)).unwrap()
}
