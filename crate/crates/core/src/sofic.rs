//! Sofic subshifts through their presentations: pruning, determinization,
//! minimization to the canonical rooted right-resolving presentation, and the
//! equivalence of Z-transducers that it decides.

use std::collections::{BTreeSet, HashMap};

use crate::alphabet::Obj;
use crate::automata::{self, iso_check, minimize, named_states, subset_name, Dfa, Nfa};
use crate::error::{Error, Result};
use crate::graph::{self, Adjacency};
use crate::rel::Rel;
use crate::simulation::{SimCertificate, SimMode};
use crate::transducer::{compose_transducers, product_transducers, Edge, Transducer, Word};

/// An automaton in which every state is both initial and final.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    alphabet: Obj,
    states: Obj,
    trans: BTreeSet<(usize, usize, usize)>,
}

impl Presentation {
    pub fn new(
        alphabet: Obj,
        states: Obj,
        trans: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Result<Self> {
        let n = Nfa::new(alphabet, states, trans, [], [])?;
        Ok(Presentation::from_nfa(&n))
    }

    /// Convenience constructor from symbol names (alphabets named `A` and `Q`).
    pub fn build(letters: &[&str], states: &[&str], edges: &[(&str, &str, &str)]) -> Result<Self> {
        Ok(Presentation::from_nfa(&Nfa::build(letters, states, edges, &[], &[])?))
    }

    /// Forgets the initial and final states of an automaton.
    pub fn from_nfa(n: &Nfa) -> Self {
        Presentation {
            alphabet: n.alphabet().clone(),
            states: n.states().clone(),
            trans: n.trans().clone(),
        }
    }

    pub fn alphabet(&self) -> &Obj {
        &self.alphabet
    }

    pub fn states(&self) -> &Obj {
        &self.states
    }

    pub fn num_states(&self) -> usize {
        self.states.size()
    }

    pub fn trans(&self) -> &BTreeSet<(usize, usize, usize)> {
        &self.trans
    }

    pub fn state_names(&self) -> BTreeSet<String> {
        (0..self.num_states()).map(|q| self.states.render(q)).collect()
    }

    /// The automaton `(T, A, Q, Q, Q)`.
    pub fn to_nfa(&self) -> Nfa {
        let all: Vec<usize> = (0..self.num_states()).collect();
        Nfa::new(
            self.alphabet.clone(),
            self.states.clone(),
            self.trans.iter().copied(),
            all.clone(),
            all,
        )
        .expect("same data")
    }

    pub fn to_ztransducer(&self) -> ZTransducer {
        let t = self.to_nfa().to_transducer();
        ZTransducer::from_transducer(&t)
    }

    pub fn graph(&self) -> Adjacency {
        graph::adjacency(self.num_states(), self.trans.iter().map(|&(p, _, q)| (p, q)))
    }

    pub fn is_right_resolving(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.trans.iter().all(|&(p, a, _)| seen.insert((p, a)))
    }

    /// Keeps the states in `kept`; surviving states keep their names.
    pub fn restrict(&self, kept: &BTreeSet<usize>) -> Presentation {
        Presentation::from_nfa(&self.to_nfa().restrict(kept))
    }

    pub fn is_empty(&self) -> bool {
        self.num_states() == 0
    }
}

/// A presentation with a distinguished root state.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootedPresentation {
    pub presentation: Presentation,
    pub root: usize,
}

impl RootedPresentation {
    pub fn new(presentation: Presentation, root: usize) -> Result<Self> {
        presentation.states.check(root)?;
        Ok(RootedPresentation { presentation, root })
    }

    /// Every state is reachable from the root.
    pub fn is_rooted(&self) -> bool {
        graph::reach(&self.presentation.graph(), &BTreeSet::from([self.root])).len()
            == self.presentation.num_states()
    }

    /// Reads the presentation as a DFA started at the root, every state final.
    pub fn to_dfa(&self) -> Result<Dfa> {
        let p = &self.presentation;
        let all: Vec<usize> = (0..p.num_states()).collect();
        let n = Nfa::new(p.alphabet.clone(), p.states.clone(), p.trans.iter().copied(), [self.root], all)?;
        Dfa::try_from_nfa(n)
    }
}

/// The canonical presentation of a subshift; the empty subshift has no
/// rooted presentation at all.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CanonicalForm {
    Empty,
    Rooted(RootedPresentation),
}

impl CanonicalForm {
    pub fn num_states(&self) -> usize {
        match self {
            CanonicalForm::Empty => 0,
            CanonicalForm::Rooted(r) => r.presentation.num_states(),
        }
    }
}

/// A transducer on bi-infinite words: `(T, A, B, Q)` without boundary states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZTransducer {
    input: Obj,
    output: Obj,
    states: Obj,
    trans: Rel,
}

impl ZTransducer {
    pub fn new(input: Obj, output: Obj, states: Obj, trans: Rel) -> Result<Self> {
        input.concat(&states).expect_eq(trans.dom())?;
        output.concat(&states).expect_eq(trans.cod())?;
        Ok(ZTransducer {
            input,
            output,
            states,
            trans,
        })
    }

    pub fn from_edges(input: Obj, output: Obj, states: Obj, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let t = Transducer::from_edges(input, output, states, edges, BTreeSet::new(), BTreeSet::new())?;
        Ok(ZTransducer::from_transducer(&t))
    }

    /// Drops the initial and final states.
    pub fn from_transducer(t: &Transducer) -> Self {
        ZTransducer {
            input: t.input().clone(),
            output: t.output().clone(),
            states: t.states().clone(),
            trans: t.trans().clone(),
        }
    }

    /// The same machine with every state initial and final.
    pub fn to_transducer(&self) -> Transducer {
        let all: BTreeSet<usize> = (0..self.states.size()).collect();
        Transducer::new(
            self.input.clone(),
            self.output.clone(),
            self.states.clone(),
            self.trans.clone(),
            all.clone(),
            all,
        )
        .expect("same data")
    }

    pub fn input(&self) -> &Obj {
        &self.input
    }

    pub fn output(&self) -> &Obj {
        &self.output
    }

    pub fn states(&self) -> &Obj {
        &self.states
    }

    pub fn trans(&self) -> &Rel {
        &self.trans
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.to_transducer().edges().collect()
    }

    pub fn graph(&self) -> Adjacency {
        graph::adjacency(self.states.size(), self.edges().into_iter().map(|e| (e.from, e.to)))
    }

    /// The presentation over `input × output` whose subshift is the behavior.
    pub fn to_presentation(&self) -> Presentation {
        Presentation::from_nfa(&Nfa::from_transducer(&self.to_transducer().to_automaton()).expect("unit output"))
    }
}

/// Keeps the states that start a path of length `card(Q)`.
pub fn forward_prune(p: &Presentation) -> Presentation {
    p.restrict(&graph::starts_of_paths(&p.graph(), p.num_states()))
}

/// Keeps the states that end a path of length `card(Q)`.
pub fn backward_prune(p: &Presentation) -> Presentation {
    p.restrict(&graph::starts_of_paths(&graph::reverse(&p.graph()), p.num_states()))
}

/// Keeps the states lying on a bi-infinite path.
pub fn prune(p: &Presentation) -> Presentation {
    let g = p.graph();
    let n = p.num_states();
    let fwd = graph::starts_of_paths(&g, n);
    let bwd = graph::starts_of_paths(&graph::reverse(&g), n);
    p.restrict(&fwd.intersection(&bwd).copied().collect())
}

pub fn is_pruned(p: &Presentation) -> bool {
    prune(p).num_states() == p.num_states()
}

/// Subset construction started from the full state set; only non-empty
/// subsets are kept, so transitions may be undefined.
pub fn determinize_presentation(p: &Presentation) -> Result<(RootedPresentation, SimCertificate)> {
    if p.is_empty() {
        return Err(Error::Precondition(
            "the empty subshift has no rooted presentation".into(),
        ));
    }
    if !is_pruned(p) {
        return Err(Error::Precondition("presentation is not pruned".into()));
    }
    let delta = p.to_nfa().delta();
    let na = p.alphabet.size();
    let root: BTreeSet<usize> = (0..p.num_states()).collect();
    let mut subsets = vec![root.clone()];
    let mut index: HashMap<BTreeSet<usize>, usize> = HashMap::from([(root, 0)]);
    let mut trans = Vec::new();
    let mut i = 0;
    while i < subsets.len() {
        for a in 0..na {
            let target: BTreeSet<usize> = subsets[i].iter().flat_map(|&q| delta[q][a].iter().copied()).collect();
            if target.is_empty() {
                continue;
            }
            let j = *index.entry(target.clone()).or_insert_with(|| {
                subsets.push(target);
                subsets.len() - 1
            });
            trans.push((i, a, j));
        }
        i += 1;
    }
    let states = named_states(
        &format!("P({})", p.states),
        subsets.iter().map(|s| subset_name(&p.states, s)).collect(),
    );
    let contains = Rel::new(
        states.clone(),
        p.states.clone(),
        subsets.iter().enumerate().flat_map(|(i, s)| s.iter().map(move |&q| (i, q))),
    )?;
    let det = Presentation::new(p.alphabet.clone(), states, trans)?;
    Ok((
        RootedPresentation::new(det, 0)?,
        SimCertificate::new(contains, SimMode::TwoSided),
    ))
}

/// Merges the states of a right-resolving rooted presentation by follower
/// sets. The certificate maps original states to their classes.
pub fn minimize_presentation(rp: &RootedPresentation) -> Result<(RootedPresentation, SimCertificate)> {
    if !rp.presentation.is_right_resolving() {
        return Err(Error::Precondition("presentation is not right-resolving".into()));
    }
    if !rp.is_rooted() {
        return Err(Error::Precondition("not every state is reachable from the root".into()));
    }
    let (m, lmap) = minimize(&rp.to_dfa()?);
    let root = m.initial_state().expect("the root has a non-empty follower set");
    let min = RootedPresentation::new(Presentation::from_nfa(m.as_nfa()), root)?;
    Ok((min, SimCertificate::new(lmap, SimMode::TwoSided)))
}

/// Prune, then (unless empty) determinize and minimize.
pub fn canonical_form(p: &Presentation) -> CanonicalForm {
    let pruned = prune(p);
    if pruned.is_empty() {
        return CanonicalForm::Empty;
    }
    let (det, _) = determinize_presentation(&pruned).expect("pruned and non-empty");
    let (min, _) = minimize_presentation(&det).expect("determinized presentations are rooted");
    CanonicalForm::Rooted(min)
}

/// The root-preserving isomorphism between two rooted right-resolving
/// presentations, if any; it is forced by a synchronized walk from the roots.
pub fn rooted_iso(r1: &RootedPresentation, r2: &RootedPresentation) -> Option<Vec<usize>> {
    iso_check(&r1.to_dfa().ok()?, &r2.to_dfa().ok()?)
}

pub fn canonical_forms_iso(c1: &CanonicalForm, c2: &CanonicalForm) -> bool {
    match (c1, c2) {
        (CanonicalForm::Empty, CanonicalForm::Empty) => true,
        (CanonicalForm::Rooted(r1), CanonicalForm::Rooted(r2)) => rooted_iso(r1, r2).is_some(),
        _ => false,
    }
}

/// Equality of the presented subshifts.
pub fn presentations_equiv(p1: &Presentation, p2: &Presentation) -> Result<bool> {
    p1.alphabet.expect_eq(&p2.alphabet)?;
    Ok(canonical_forms_iso(&canonical_form(p1), &canonical_form(p2)))
}

/// Equality of the behaviors of two Z-transducers.
pub fn ztransducers_equiv(z1: &ZTransducer, z2: &ZTransducer) -> Result<bool> {
    z1.input.expect_eq(&z2.input)?;
    z1.output.expect_eq(&z2.output)?;
    presentations_equiv(&z1.to_presentation(), &z2.to_presentation())
}

/// Recognizes the factor language: the pruned presentation with every state
/// initial and final.
pub fn factor_language(p: &Presentation) -> Nfa {
    prune(p).to_nfa()
}

pub fn factors_upto(p: &Presentation, k: usize) -> BTreeSet<Word> {
    factor_language(p).language_upto(k)
}

pub fn compose_z(z1: &ZTransducer, z2: &ZTransducer) -> Result<ZTransducer> {
    Ok(ZTransducer::from_transducer(&compose_transducers(
        &z1.to_transducer(),
        &z2.to_transducer(),
    )?))
}

pub fn product_z(z1: &ZTransducer, z2: &ZTransducer) -> ZTransducer {
    ZTransducer::from_transducer(&product_transducers(&z1.to_transducer(), &z2.to_transducer()))
}

/// Whether the periodic point `…www…` belongs to the presented subshift: some
/// state lies on a cycle labeled `w^k` with `k ≤ card(Q)`.
pub fn periodic_membership(p: &Presentation, w: &[usize]) -> Result<bool> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    for &a in w {
        p.alphabet.check(a)?;
    }
    let p = prune(p);
    let n = p.num_states();
    let nfa = p.to_nfa();
    // one[q] = states reached from q by reading w once
    let one: Vec<BTreeSet<usize>> = (0..n)
        .map(|q| w.iter().fold(BTreeSet::from([q]), |s, &a| nfa.step(&s, a)))
        .collect();
    let mut power = one.clone();
    for _ in 0..n {
        if (0..n).any(|q| power[q].contains(&q)) {
            return Ok(true);
        }
        power = power
            .iter()
            .map(|s| s.iter().flat_map(|&r| one[r].iter().copied()).collect())
            .collect();
    }
    Ok(false)
}

/// Subshift equality through the pruned factor languages.
pub fn factor_languages_equiv(p1: &Presentation, p2: &Presentation) -> Result<bool> {
    automata::nfa_equiv(&factor_language(p1), &factor_language(p2))
}
