//! Seeded generators for random relations, machines and diagrams, and the
//! semantics-preserving diagram mutations used by the test suites.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alphabet::{Alphabet, Obj};
use crate::automata::Nfa;
use crate::diagram::{slide, Diagram, SlideSide, Term};
use crate::rel::Rel;
use crate::sofic::Presentation;
use crate::transducer::{Edge, Transducer};

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Wire `name` with `n` symbols `prefix0, prefix1, …`.
pub fn wire(name: &str, prefix: &str, n: usize) -> Obj {
    Obj::wire(Alphabet::numbered(name, prefix, n))
}

/// The two-letter wire `A = {0, 1}` used by random diagrams.
pub fn bits() -> Obj {
    Obj::wire(Alphabet::new("A", ["0", "1"]).expect("distinct"))
}

pub fn subset(rng: &mut Rng8, n: usize, p: f64) -> BTreeSet<usize> {
    (0..n).filter(|_| rng.gen_bool(p)).collect()
}

/// Each pair is present with probability `p`.
pub fn random_rel(rng: &mut Rng8, dom: &Obj, cod: &Obj, p: f64) -> Rel {
    let pairs: Vec<(usize, usize)> = (0..dom.size())
        .flat_map(|x| (0..cod.size()).map(move |y| (x, y)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Rel::new(dom.clone(), cod.clone(), pairs).expect("in range")
}

/// Each input gets between zero and `max_out` outputs.
pub fn sparse_rel(rng: &mut Rng8, dom: &Obj, cod: &Obj, max_out: usize) -> Rel {
    let mut pairs = Vec::new();
    for x in 0..dom.size() {
        let k = rng.gen_range(0..=max_out.min(cod.size()));
        let ys: Vec<usize> = (0..cod.size()).collect();
        pairs.extend(ys.choose_multiple(rng, k).map(|&y| (x, y)));
    }
    Rel::new(dom.clone(), cod.clone(), pairs).expect("in range")
}

/// `|Q| ≤ max_q`, `|A| ≤ max_a`, `|B| ≤ max_b`, all at least one.
pub fn random_transducer(rng: &mut Rng8, max_q: usize, max_a: usize, max_b: usize) -> Transducer {
    let a = wire("A", "a", rng.gen_range(1..=max_a));
    let b = wire("B", "b", rng.gen_range(1..=max_b));
    let q = wire("Q", "q", rng.gen_range(1..=max_q));
    random_transducer_on(rng, &a, &b, &q)
}

pub fn random_transducer_on(rng: &mut Rng8, a: &Obj, b: &Obj, q: &Obj) -> Transducer {
    let p = rng.gen_range(0.15..0.6);
    let trans = random_rel(rng, &a.concat(q), &b.concat(q), p);
    let initial = subset(rng, q.size(), 0.5);
    let fin = subset(rng, q.size(), 0.5);
    Transducer::new(a.clone(), b.clone(), q.clone(), trans, initial, fin).expect("well typed")
}

pub fn random_nfa(rng: &mut Rng8, max_q: usize, max_a: usize) -> Nfa {
    let a = wire("A", "a", rng.gen_range(1..=max_a));
    let q = wire("Q", "q", rng.gen_range(1..=max_q));
    random_nfa_on(rng, &a, &q)
}

pub fn random_nfa_on(rng: &mut Rng8, a: &Obj, q: &Obj) -> Nfa {
    let p = rng.gen_range(0.15..0.6);
    let mut trans = Vec::new();
    for s in 0..q.size() {
        for x in 0..a.size() {
            for t in 0..q.size() {
                if rng.gen_bool(p) {
                    trans.push((s, x, t));
                }
            }
        }
    }
    let initial = subset(rng, q.size(), 0.5);
    let fin = subset(rng, q.size(), 0.5);
    Nfa::new(a.clone(), q.clone(), trans, initial, fin).expect("in range")
}

pub fn random_presentation(rng: &mut Rng8, max_q: usize, max_a: usize) -> Presentation {
    let a = wire("A", "a", rng.gen_range(1..=max_a));
    let q = wire("Q", "q", rng.gen_range(1..=max_q));
    random_presentation_on(rng, &a, &q)
}

pub fn random_presentation_on(rng: &mut Rng8, a: &Obj, q: &Obj) -> Presentation {
    Presentation::from_nfa(&random_nfa_on(rng, a, q))
}

/// Size limits for random diagrams.
#[derive(Clone, Copy, Debug)]
pub struct DiagramShape {
    pub max_nodes: usize,
    pub max_feedbacks: usize,
}

impl Default for DiagramShape {
    fn default() -> Self {
        DiagramShape {
            max_nodes: 6,
            max_feedbacks: 2,
        }
    }
}

/// A random diagram `A → A` with `A = {0, 1}`.
pub fn random_diagram(rng: &mut Rng8, shape: DiagramShape) -> Diagram {
    let mut feedbacks = shape.max_feedbacks;
    let mut depth = 0;
    gen_endo(rng, &bits(), shape.max_nodes.max(1), &mut feedbacks, &mut depth)
}

fn leaf(rng: &mut Rng8, o: &Obj) -> Diagram {
    if o.size() <= 4 && rng.gen_bool(0.15) {
        Term::Id(o.clone())
    } else {
        Term::Box(sparse_rel(rng, o, o, 2))
    }
}

fn gen_endo(rng: &mut Rng8, o: &Obj, budget: usize, feedbacks: &mut usize, depth: &mut usize) -> Diagram {
    if budget <= 1 {
        return leaf(rng, o);
    }
    let mut options = vec![0u8];
    if budget >= 3 {
        options.push(1);
        if o.wires().len() >= 2 {
            options.push(2);
        }
    }
    if *feedbacks > 0 {
        options.extend([3, 3, 3]);
    }
    match *options.choose(rng).expect("non-empty") {
        1 => {
            let left = rng.gen_range(1..budget - 1);
            let a = gen_endo(rng, o, left, feedbacks, depth);
            let b = gen_endo(rng, o, budget - 1 - left, feedbacks, depth);
            a.seq(b)
        }
        2 => {
            let first = Obj::wire(o.wires()[0].clone());
            let rest = Obj::new(o.wires()[1..].iter().cloned());
            let left = rng.gen_range(1..budget - 1);
            let a = gen_endo(rng, &first, left, feedbacks, depth);
            let b = gen_endo(rng, &rest, budget - 1 - left, feedbacks, depth);
            a.par(b)
        }
        3 => {
            *feedbacks -= 1;
            *depth += 1;
            let n = if o.wires().len() > 1 { 2 } else { rng.gen_range(2..=3) };
            let q = wire(&format!("Q{depth}"), "s", n);
            let mut initial = subset(rng, n, 0.5);
            if initial.is_empty() {
                initial.insert(rng.gen_range(0..n));
            }
            let fin = subset(rng, n, 0.6);
            let body = gen_endo(rng, &o.concat(&q), budget - 1, feedbacks, depth);
            Diagram::labeled(q, initial, fin, body)
        }
        _ => leaf(rng, o),
    }
}

/// The kinds of semantics-preserving rewrites applied by [`mutate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mutation {
    /// Two boxes in sequence or in parallel merged into one.
    BoxMerge,
    /// An identity placed in front of a subterm.
    IdInsertion,
    /// Two directly nested feedbacks merged into one over the product wire.
    FeedbackMerge,
    /// A neighbouring term moved inside a feedback.
    PullIntoFeedback,
    /// A state permutation slid around a feedback.
    Slide,
}

fn count(d: &Diagram) -> usize {
    d.size()
}

/// Rebuilds `d`, replacing the subterm at preorder position `target` by
/// `f(subterm)`.
fn rewrite_at(d: &Diagram, target: usize, pos: &mut usize, f: &mut dyn FnMut(&Diagram) -> Diagram) -> Diagram {
    let here = *pos;
    *pos += 1;
    if here == target {
        *pos += count(d) - 1;
        return f(d);
    }
    match d {
        Term::Seq(a, b) => {
            let a2 = rewrite_at(a, target, pos, f);
            let b2 = rewrite_at(b, target, pos, f);
            a2.seq(b2)
        }
        Term::Par(a, b) => {
            let a2 = rewrite_at(a, target, pos, f);
            let b2 = rewrite_at(b, target, pos, f);
            a2.par(b2)
        }
        Term::Feedback { state, labels, body } => {
            Term::feedback(state.clone(), labels.clone(), rewrite_at(body, target, pos, f))
        }
        leaf => leaf.clone(),
    }
}

fn preorder(d: &Diagram) -> Vec<&Diagram> {
    let mut out = vec![d];
    match d {
        Term::Seq(a, b) | Term::Par(a, b) => {
            out.extend(preorder(a));
            out.extend(preorder(b));
        }
        Term::Feedback { body, .. } => out.extend(preorder(body)),
        _ => {}
    }
    out
}

fn applicable(d: &Diagram) -> Vec<Mutation> {
    let is_fb = |t: &Diagram| matches!(t, Term::Feedback { .. });
    let mut out = Vec::new();
    match d {
        Term::Seq(a, b) | Term::Par(a, b) => {
            if matches!((&**a, &**b), (Term::Box(_), Term::Box(_))) {
                out.push(Mutation::BoxMerge);
            }
            if is_fb(a) || is_fb(b) {
                out.push(Mutation::PullIntoFeedback);
            }
        }
        Term::Feedback { state, body, .. } => {
            if is_fb(body) {
                out.push(Mutation::FeedbackMerge);
            }
            if state.size() >= 2 {
                out.push(Mutation::Slide);
            }
        }
        _ => {}
    }
    out
}

fn apply(rng: &mut Rng8, d: &Diagram, m: Mutation) -> Diagram {
    match (m, d) {
        (Mutation::BoxMerge, Term::Seq(a, b)) => match (&**a, &**b) {
            (Term::Box(r), Term::Box(s)) => Term::Box(r.then(s).expect("typed")),
            _ => unreachable!(),
        },
        (Mutation::BoxMerge, Term::Par(a, b)) => match (&**a, &**b) {
            (Term::Box(r), Term::Box(s)) => Term::Box(r.product(s)),
            _ => unreachable!(),
        },
        (Mutation::FeedbackMerge, Term::Feedback { state: q1, labels: l1, body }) => match &**body {
            Term::Feedback {
                state: q2,
                labels: l2,
                body: inner,
            } => {
                let n2 = q2.size();
                let pair = |x: &BTreeSet<usize>, y: &BTreeSet<usize>| -> BTreeSet<usize> {
                    x.iter().flat_map(|&i| y.iter().map(move |&j| i * n2 + j)).collect()
                };
                Diagram::labeled(
                    q1.concat(q2),
                    pair(&l1.initial, &l2.initial),
                    pair(&l1.fin, &l2.fin),
                    (**inner).clone(),
                )
            }
            _ => unreachable!(),
        },
        (Mutation::PullIntoFeedback, Term::Seq(a, b)) => match (&**a, &**b) {
            (Term::Feedback { state, labels, body }, next) => Term::feedback(
                state.clone(),
                labels.clone(),
                (**body).clone().seq(next.clone().par(Term::Id(state.clone()))),
            ),
            (prev, Term::Feedback { state, labels, body }) => Term::feedback(
                state.clone(),
                labels.clone(),
                prev.clone().par(Term::Id(state.clone())).seq((**body).clone()),
            ),
            _ => unreachable!(),
        },
        (Mutation::PullIntoFeedback, Term::Par(a, b)) => match (&**a, &**b) {
            (other, Term::Feedback { state, labels, body }) => {
                Term::feedback(state.clone(), labels.clone(), other.clone().par((**body).clone()))
            }
            (Term::Feedback { state, labels, body }, other) => {
                // A×C×Q → A×Q×C → B×Q×D → B×D×Q
                let (a_in, b_out) = Term::Feedback {
                    state: state.clone(),
                    labels: labels.clone(),
                    body: body.clone(),
                }
                .type_of()
                .expect("typed");
                let (c_in, d_out) = other.type_of().expect("typed");
                let pre = Term::Id(a_in).par(Term::Swap(c_in, state.clone()));
                let post = Term::Id(b_out).par(Term::Swap(state.clone(), d_out));
                Term::feedback(
                    state.clone(),
                    labels.clone(),
                    pre.seq((**body).clone().par(other.clone())).seq(post),
                )
            }
            _ => unreachable!(),
        },
        (Mutation::Slide, Term::Feedback { state, labels, body }) => {
            let n = state.size();
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(rng);
            let s = Rel::from_function(state.clone(), state.clone(), &perm).expect("permutation");
            let (_, b) = d.type_of().expect("typed");
            let undo = (**body).clone().seq(Term::Id(b).par(Term::Box(s.transpose())));
            let initial = s.preimage(&labels.initial);
            slide(&s, &undo, &initial, &labels.fin, SlideSide::Left).expect("typed").0
        }
        (Mutation::IdInsertion, t) => {
            let (a, _) = t.type_of().expect("typed");
            Term::Id(a).seq(t.clone())
        }
        _ => unreachable!("mutation not applicable"),
    }
}

/// Applies between one and three semantics-preserving rewrites at random
/// positions; returns the new diagram and the rewrites used.
pub fn mutate(rng: &mut Rng8, d: &Diagram) -> (Diagram, Vec<Mutation>) {
    let rounds = rng.gen_range(1..=3);
    let mut cur = d.clone();
    let mut used = Vec::new();
    for _ in 0..rounds {
        let nodes = preorder(&cur);
        let mut candidates: Vec<(usize, Mutation)> = nodes
            .iter()
            .enumerate()
            .flat_map(|(i, t)| applicable(t).into_iter().map(move |m| (i, m)))
            .collect();
        if candidates.is_empty() {
            candidates.push((rng.gen_range(0..nodes.len()), Mutation::IdInsertion));
        }
        let (target, m) = *candidates.choose(rng).expect("non-empty");
        let mut pos = 0;
        let mut f = |t: &Diagram| apply(rng, t, m);
        cur = rewrite_at(&cur, target, &mut pos, &mut f);
        used.push(m);
    }
    (cur, used)
}

/// Toggles one pair of one box; `None` if the diagram has no box.
pub fn alter_box(rng: &mut Rng8, d: &Diagram) -> Option<Diagram> {
    let boxes: Vec<usize> = preorder(d)
        .iter()
        .enumerate()
        .filter(|(_, t)| matches!(t, Term::Box(_)))
        .map(|(i, _)| i)
        .collect();
    let &target = boxes.choose(rng)?;
    let mut pos = 0;
    let mut f = |t: &Diagram| match t {
        Term::Box(r) => {
            let x = rng.gen_range(0..r.dom().size());
            let y = rng.gen_range(0..r.cod().size());
            let mut pairs = r.pairs().clone();
            if !pairs.remove(&(x, y)) {
                pairs.insert((x, y));
            }
            Term::Box(Rel::new(r.dom().clone(), r.cod().clone(), pairs).expect("in range"))
        }
        _ => unreachable!(),
    };
    Some(rewrite_at(d, target, &mut pos, &mut f))
}

/// Ingredients of one sliding equation: `s : Q' → Q`, a body
/// `A × Q → A × Q'`, initial states in `Q'` and final states in `Q`.
#[derive(Clone, Debug)]
pub struct SlideInstance {
    pub s: Rel,
    pub body: Diagram,
    pub initial: BTreeSet<usize>,
    pub fin: BTreeSet<usize>,
}

pub fn random_slide_instance(rng: &mut Rng8) -> SlideInstance {
    let a = bits();
    let q = wire("Q", "q", rng.gen_range(1..=3));
    let q2 = wire("P", "p", rng.gen_range(1..=3));
    let s = random_rel(rng, &q2, &q, 0.5);
    let step = Term::Box(sparse_rel(rng, &a.concat(&q), &a.concat(&q2), 2));
    let body = if rng.gen_bool(0.5) {
        step
    } else {
        let mut none = 0;
        let mut depth = 0;
        gen_endo(rng, &a.concat(&q), 2, &mut none, &mut depth).seq(step)
    };
    SlideInstance {
        s,
        body,
        initial: subset(rng, q2.size(), 0.6),
        fin: subset(rng, q.size(), 0.6),
    }
}

/// A triple `(m1, m2, s)` for a simulation check. About half are unfoldings
/// of `m1` along a surjection `s` (which pass), possibly perturbed; the rest
/// are fully random.
pub fn random_sim_triple(rng: &mut Rng8) -> (Transducer, Transducer, Rel) {
    let m1 = random_transducer(rng, 3, 2, 2);
    let c = m1.states().clone();
    if rng.gen_bool(0.5) {
        let d = wire("D", "d", rng.gen_range(1..=3));
        let s = random_rel(rng, &d, &c, 0.4);
        let m2 = random_transducer_on(rng, m1.input(), m1.output(), &d);
        return (m1, m2, s);
    }
    let (m2, s) = unfold(rng, &m1);
    let m2 = if rng.gen_bool(0.5) { perturb(rng, &m2) } else { m2 };
    (m1, m2, s)
}

/// A machine on more states mapping onto `m` along a random surjection `π`,
/// with `π` as a two-sided certificate.
pub fn unfold(rng: &mut Rng8, m: &Transducer) -> (Transducer, Rel) {
    let c = m.states().size();
    let n = rng.gen_range(c..=c + 2);
    let mut pi: Vec<usize> = (0..n).map(|i| if i < c { i } else { rng.gen_range(0..c) }).collect();
    pi.shuffle(rng);
    let d = wire("D", "d", n);
    let edges: Vec<Edge> = m
        .edges()
        .flat_map(|e| {
            let (from, to) = (e.from, e.to);
            let pi = &pi;
            (0..n)
                .filter(move |&x| pi[x] == from)
                .flat_map(move |x| (0..n).filter(move |&y| pi[y] == to).map(move |y| Edge { from: x, to: y, ..e }))
        })
        .collect();
    let pre = |set: &BTreeSet<usize>| -> BTreeSet<usize> { (0..n).filter(|&x| set.contains(&pi[x])).collect() };
    let m2 = Transducer::from_edges(
        m.input().clone(),
        m.output().clone(),
        d.clone(),
        edges,
        pre(m.initial()),
        pre(m.fin()),
    )
    .expect("well typed");
    let s = Rel::from_function(d, m.states().clone(), &pi).expect("function");
    (m2, s)
}

/// Toggles one transition, initial or final flag.
pub fn perturb(rng: &mut Rng8, m: &Transducer) -> Transducer {
    let nq = m.states().size();
    match rng.gen_range(0..3) {
        0 => {
            let x = rng.gen_range(0..m.trans().dom().size());
            let y = rng.gen_range(0..m.trans().cod().size());
            let mut pairs = m.trans().pairs().clone();
            if !pairs.remove(&(x, y)) {
                pairs.insert((x, y));
            }
            let trans = Rel::new(m.trans().dom().clone(), m.trans().cod().clone(), pairs).expect("in range");
            Transducer::new(
                m.input().clone(),
                m.output().clone(),
                m.states().clone(),
                trans,
                m.initial().clone(),
                m.fin().clone(),
            )
            .expect("typed")
        }
        k => {
            let q = rng.gen_range(0..nq);
            let (mut i, mut f) = (m.initial().clone(), m.fin().clone());
            let set = if k == 1 { &mut i } else { &mut f };
            if !set.remove(&q) {
                set.insert(q);
            }
            m.with_boundary(i, f).expect("in range")
        }
    }
}

/// A presentation pair with a candidate certificate, in the same mixture as
/// [`random_sim_triple`].
pub fn random_inf_triple(rng: &mut Rng8) -> (Presentation, Presentation, Rel) {
    let p1 = random_presentation(rng, 4, 2);
    let m1 = p1.to_nfa().to_transducer();
    if rng.gen_bool(0.3) {
        let d = wire("D", "d", rng.gen_range(1..=4));
        let s = random_rel(rng, &d, p1.states(), 0.4);
        let p2 = random_presentation_on(rng, p1.alphabet(), &d);
        return (p1, p2, s);
    }
    let (m2, s) = unfold(rng, &m1);
    let m2 = if rng.gen_bool(0.5) { perturb(rng, &m2) } else { m2 };
    let p2 = Presentation::from_nfa(&Nfa::from_transducer(&m2).expect("unit output"));
    let s = if rng.gen_bool(0.3) {
        let mut pairs = s.pairs().clone();
        let x = rng.gen_range(0..s.dom().size());
        let y = rng.gen_range(0..s.cod().size());
        if !pairs.remove(&(x, y)) {
            pairs.insert((x, y));
        }
        Rel::new(s.dom().clone(), s.cod().clone(), pairs).expect("in range")
    } else {
        s
    };
    (p1, p2, s)
}
