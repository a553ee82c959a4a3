//! Nondeterministic and deterministic automata: subset construction, Moore
//! minimization, isomorphism of minimal automata, and the factor / pruned
//! language constructions.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::alphabet::{Alphabet, Obj};
use crate::error::{Error, Result};
use crate::graph::{self, Adjacency};
use crate::rel::Rel;
use crate::transducer::{Edge, Transducer, Word};

/// An automaton `(T, A, Q, I, F)`; transitions are stored as `(from, letter, to)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Nfa {
    alphabet: Obj,
    states: Obj,
    trans: BTreeSet<(usize, usize, usize)>,
    initial: BTreeSet<usize>,
    fin: BTreeSet<usize>,
}

impl Nfa {
    pub fn new(
        alphabet: Obj,
        states: Obj,
        trans: impl IntoIterator<Item = (usize, usize, usize)>,
        initial: impl IntoIterator<Item = usize>,
        fin: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let trans: BTreeSet<_> = trans.into_iter().collect();
        let initial: BTreeSet<_> = initial.into_iter().collect();
        let fin: BTreeSet<_> = fin.into_iter().collect();
        for &(p, a, q) in &trans {
            states.check(p)?;
            alphabet.check(a)?;
            states.check(q)?;
        }
        for &q in initial.iter().chain(&fin) {
            states.check(q)?;
        }
        Ok(Nfa {
            alphabet,
            states,
            trans,
            initial,
            fin,
        })
    }

    /// Convenience constructor from symbol names, with alphabets named `A` and `Q`.
    pub fn build(
        letters: &[&str],
        states: &[&str],
        edges: &[(&str, &str, &str)],
        initial: &[&str],
        fin: &[&str],
    ) -> Result<Self> {
        let a = Obj::wire(Alphabet::new("A", letters.iter().copied())?);
        let q = Obj::wire(Alphabet::new("Q", states.iter().copied())?);
        let mut trans = Vec::new();
        for (p, x, r) in edges {
            trans.push((q.parse_rendered(p)?, a.parse_rendered(x)?, q.parse_rendered(r)?));
        }
        let ids = |names: &[&str]| names.iter().map(|n| q.parse_rendered(n)).collect::<Result<Vec<_>>>();
        let (i, f) = (ids(initial)?, ids(fin)?);
        Nfa::new(a, q, trans, i, f)
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

    pub fn initial(&self) -> &BTreeSet<usize> {
        &self.initial
    }

    pub fn fin(&self) -> &BTreeSet<usize> {
        &self.fin
    }

    pub fn with_boundary(&self, initial: BTreeSet<usize>, fin: BTreeSet<usize>) -> Result<Self> {
        Nfa::new(
            self.alphabet.clone(),
            self.states.clone(),
            self.trans.iter().copied(),
            initial,
            fin,
        )
    }

    /// Reads a unit-output transducer as an automaton.
    pub fn from_transducer(t: &Transducer) -> Result<Self> {
        if !t.output().is_unit() {
            return Err(Error::Precondition(format!(
                "an automaton has unit output, found `{}`",
                t.output()
            )));
        }
        Nfa::new(
            t.input().clone(),
            t.states().clone(),
            t.edges().map(|e| (e.from, e.input, e.to)),
            t.initial().iter().copied(),
            t.fin().iter().copied(),
        )
    }

    pub fn to_transducer(&self) -> Transducer {
        Transducer::from_edges(
            self.alphabet.clone(),
            Obj::unit(),
            self.states.clone(),
            self.trans.iter().map(|&(from, input, to)| Edge {
                from,
                input,
                output: 0,
                to,
            }),
            self.initial.clone(),
            self.fin.clone(),
        )
        .expect("a well-formed automaton is a well-formed transducer")
    }

    /// `delta[q][a]` lists the successors of `q` on `a`.
    pub fn delta(&self) -> Vec<Vec<Vec<usize>>> {
        let mut d = vec![vec![Vec::new(); self.alphabet.size()]; self.num_states()];
        for &(p, a, q) in &self.trans {
            d[p][a].push(q);
        }
        d
    }

    pub fn graph(&self) -> Adjacency {
        graph::adjacency(self.num_states(), self.trans.iter().map(|&(p, _, q)| (p, q)))
    }

    pub fn step(&self, from: &BTreeSet<usize>, letter: usize) -> BTreeSet<usize> {
        self.trans
            .iter()
            .filter(|&&(p, a, _)| a == letter && from.contains(&p))
            .map(|&(_, _, q)| q)
            .collect()
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        let mut cur = self.initial.clone();
        for &a in word {
            cur = self.step(&cur, a);
            if cur.is_empty() {
                return false;
            }
        }
        !cur.is_disjoint(&self.fin)
    }

    /// Every accepted word of length at most `k`.
    pub fn language_upto(&self, k: usize) -> BTreeSet<Word> {
        let delta = self.delta();
        let mut out = BTreeSet::new();
        let mut frontier: Vec<(Word, BTreeSet<usize>)> = Vec::new();
        if !self.initial.is_empty() {
            frontier.push((Vec::new(), self.initial.clone()));
        }
        for len in 0..=k {
            for (w, s) in &frontier {
                if !s.is_disjoint(&self.fin) {
                    out.insert(w.clone());
                }
            }
            if len == k {
                break;
            }
            let mut next = Vec::new();
            for (w, s) in &frontier {
                for a in 0..self.alphabet.size() {
                    let t: BTreeSet<usize> = s.iter().flat_map(|&p| delta[p][a].iter().copied()).collect();
                    if !t.is_empty() {
                        let mut w2 = w.clone();
                        w2.push(a);
                        next.push((w2, t));
                    }
                }
            }
            frontier = next;
        }
        out
    }

    pub fn accessible(&self) -> BTreeSet<usize> {
        graph::reach(&self.graph(), &self.initial)
    }

    pub fn coaccessible(&self) -> BTreeSet<usize> {
        graph::reach(&graph::reverse(&self.graph()), &self.fin)
    }

    pub fn is_deterministic(&self) -> bool {
        self.initial.len() <= 1 && self.delta().iter().all(|row| row.iter().all(|s| s.len() <= 1))
    }

    /// The sub-automaton on `kept`, with an atomic state alphabet that keeps
    /// the rendered names (and the display name) of the original states.
    pub fn restrict(&self, kept: &BTreeSet<usize>) -> Nfa {
        let order: Vec<usize> = kept.iter().copied().collect();
        let pos: HashMap<usize, usize> = order.iter().enumerate().map(|(i, &q)| (q, i)).collect();
        let states = Obj::wire(self.states.restrict_named(&self.states.to_string(), &order));
        let trans = self
            .trans
            .iter()
            .filter_map(|&(p, a, q)| Some((*pos.get(&p)?, a, *pos.get(&q)?)));
        let sub = |s: &BTreeSet<usize>| s.iter().filter_map(|q| pos.get(q).copied()).collect::<Vec<_>>();
        Nfa::new(
            self.alphabet.clone(),
            states,
            trans,
            sub(&self.initial),
            sub(&self.fin),
        )
        .expect("restriction stays in range")
    }

    /// Keeps only states lying on some initial-to-final path.
    pub fn trim(&self) -> Nfa {
        let keep: BTreeSet<usize> = self.accessible().intersection(&self.coaccessible()).copied().collect();
        self.restrict(&keep)
    }

    /// Disjoint union; accepts the union of the two languages.
    pub fn union(&self, other: &Nfa) -> Result<Nfa> {
        self.alphabet.expect_eq(&other.alphabet)?;
        let n = self.num_states();
        let names = (0..n)
            .map(|q| format!("l.{}", self.states.render(q)))
            .chain((0..other.num_states()).map(|q| format!("r.{}", other.states.render(q))));
        let states = Obj::wire(Alphabet::new("Q", names)?);
        let trans = self
            .trans
            .iter()
            .copied()
            .chain(other.trans.iter().map(|&(p, a, q)| (p + n, a, q + n)));
        Nfa::new(
            self.alphabet.clone(),
            states,
            trans,
            self.initial.iter().copied().chain(other.initial.iter().map(|q| q + n)),
            self.fin.iter().copied().chain(other.fin.iter().map(|q| q + n)),
        )
    }
}

/// A deterministic automaton: at most one initial state and at most one
/// successor per state and letter. Completeness is not required.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dfa(Nfa);

impl Dfa {
    pub fn try_from_nfa(n: Nfa) -> Result<Self> {
        if n.is_deterministic() {
            Ok(Dfa(n))
        } else {
            Err(Error::Precondition("automaton is not deterministic".into()))
        }
    }

    /// The canonical automaton of the empty language: no states at all.
    pub fn empty(alphabet: Obj) -> Self {
        let states = Obj::wire(Alphabet::new("∅", Vec::<String>::new()).expect("no symbols"));
        Dfa(Nfa::new(alphabet, states, [], [], []).expect("empty automaton"))
    }

    pub fn as_nfa(&self) -> &Nfa {
        &self.0
    }

    pub fn into_nfa(self) -> Nfa {
        self.0
    }

    pub fn initial_state(&self) -> Option<usize> {
        self.0.initial.iter().next().copied()
    }

    /// `table[q][a]` is the successor of `q` on `a`, if any.
    pub fn table(&self) -> Vec<Vec<Option<usize>>> {
        let mut t = vec![vec![None; self.0.alphabet.size()]; self.0.num_states()];
        for &(p, a, q) in &self.0.trans {
            t[p][a] = Some(q);
        }
        t
    }

    pub fn num_states(&self) -> usize {
        self.0.num_states()
    }

    pub fn is_accessible(&self) -> bool {
        self.0.accessible().len() == self.num_states()
    }
}

impl std::ops::Deref for Dfa {
    type Target = Nfa;

    fn deref(&self) -> &Nfa {
        &self.0
    }
}

/// Builds an atomic alphabet from `names`, falling back to numbered symbols if
/// two names collide.
pub(crate) fn named_states(name: &str, names: Vec<String>) -> Obj {
    let n = names.len();
    Obj::wire(Alphabet::new(name, names).unwrap_or_else(|_| Alphabet::numbered(name, "s", n)))
}

pub(crate) fn subset_name(states: &Obj, set: &BTreeSet<usize>) -> String {
    let parts: Vec<String> = set.iter().map(|&q| states.render(q)).collect();
    format!("{{{}}}", parts.join(","))
}

/// Subset construction from `I`, together with the "contains" relation from
/// subsets to states.
pub fn determinize(n: &Nfa) -> (Dfa, Rel) {
    let delta = n.delta();
    let na = n.alphabet.size();
    let mut subsets: Vec<BTreeSet<usize>> = vec![n.initial.clone()];
    let mut index: HashMap<BTreeSet<usize>, usize> = HashMap::from([(n.initial.clone(), 0)]);
    let mut trans = Vec::new();
    let mut i = 0;
    while i < subsets.len() {
        for a in 0..na {
            let target: BTreeSet<usize> = subsets[i].iter().flat_map(|&p| delta[p][a].iter().copied()).collect();
            let j = *index.entry(target.clone()).or_insert_with(|| {
                subsets.push(target);
                subsets.len() - 1
            });
            trans.push((i, a, j));
        }
        i += 1;
    }
    let states = named_states(
        &format!("P({})", n.states),
        subsets.iter().map(|s| subset_name(&n.states, s)).collect(),
    );
    let fin: Vec<usize> = (0..subsets.len()).filter(|&i| !subsets[i].is_disjoint(&n.fin)).collect();
    let contains = Rel::new(
        states.clone(),
        n.states.clone(),
        subsets.iter().enumerate().flat_map(|(i, s)| s.iter().map(move |&q| (i, q))),
    )
    .expect("subset members are states");
    let dfa = Nfa::new(n.alphabet.clone(), states, trans, [0], fin).expect("subset automaton is well formed");
    (Dfa(dfa), contains)
}

/// Minimal automaton of the language of `d`, and the map sending each
/// accessible, live state to its follow-language class.
pub fn minimize(d: &Dfa) -> (Dfa, Rel) {
    let table = d.table();
    let na = d.alphabet.size();
    let Some(init) = d.initial_state() else {
        let e = Dfa::empty(d.alphabet.clone());
        let lmap = Rel::empty(d.states.clone(), e.states.clone());
        return (e, lmap);
    };
    let acc: Vec<usize> = d.accessible().into_iter().collect();
    let pos: HashMap<usize, usize> = acc.iter().enumerate().map(|(i, &q)| (q, i)).collect();
    let sink = acc.len();
    let next: Vec<Vec<usize>> = acc
        .iter()
        .map(|&q| (0..na).map(|a| table[q][a].map_or(sink, |r| pos[&r])).collect())
        .chain(std::iter::once(vec![sink; na]))
        .collect();
    let mut class: Vec<usize> = (0..=sink)
        .map(|i| usize::from(i < sink && d.fin.contains(&acc[i])))
        .collect();
    let mut count = class.iter().collect::<BTreeSet<_>>().len();
    loop {
        let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let refined: Vec<usize> = (0..=sink)
            .map(|i| {
                let sig = (class[i], next[i].iter().map(|&j| class[j]).collect());
                let fresh = ids.len();
                *ids.entry(sig).or_insert(fresh)
            })
            .collect();
        class = refined;
        if ids.len() == count {
            break;
        }
        count = ids.len();
    }
    let dead = class[sink];
    if class[pos[&init]] == dead {
        let e = Dfa::empty(d.alphabet.clone());
        let lmap = Rel::empty(d.states.clone(), e.states.clone());
        return (e, lmap);
    }
    // classes ordered by their smallest member (acc is sorted)
    let mut order: Vec<usize> = Vec::new();
    let mut rep: Vec<usize> = Vec::new();
    let mut new_id: HashMap<usize, usize> = HashMap::new();
    for i in 0..sink {
        if class[i] != dead && !new_id.contains_key(&class[i]) {
            new_id.insert(class[i], order.len());
            order.push(class[i]);
            rep.push(i);
        }
    }
    let states = named_states(
        &format!("L({})", d.states),
        rep.iter().map(|&i| d.states.render(acc[i])).collect(),
    );
    let mut trans = Vec::new();
    for (c, &i) in rep.iter().enumerate() {
        for a in 0..na {
            if let Some(&t) = new_id.get(&class[next[i][a]]) {
                trans.push((c, a, t));
            }
        }
    }
    let fin = rep
        .iter()
        .enumerate()
        .filter(|(_, &i)| d.fin.contains(&acc[i]))
        .map(|(c, _)| c);
    let lmap = Rel::new(
        d.states.clone(),
        states.clone(),
        (0..sink).filter_map(|i| Some((acc[i], *new_id.get(&class[i])?))),
    )
    .expect("classes are states of the minimal automaton");
    let m = Nfa::new(d.alphabet.clone(), states, trans, [new_id[&class[pos[&init]]]], fin)
        .expect("quotient automaton is well formed");
    (Dfa(m), lmap)
}

/// The state bijection `d1 → d2` preserving the initial state, final states
/// and transitions, if there is one. Both automata should be minimal.
pub fn iso_check(d1: &Dfa, d2: &Dfa) -> Option<Vec<usize>> {
    if d1.alphabet.size() != d2.alphabet.size() || d1.num_states() != d2.num_states() {
        return None;
    }
    let n = d1.num_states();
    let (t1, t2) = (d1.table(), d2.table());
    let mut map: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    let mut queue = VecDeque::new();
    match (d1.initial_state(), d2.initial_state()) {
        (None, None) => return (n == 0).then(Vec::new),
        (Some(p), Some(q)) => {
            map[p] = Some(q);
            used[q] = true;
            queue.push_back((p, q));
        }
        _ => return None,
    }
    while let Some((p, q)) = queue.pop_front() {
        if d1.fin.contains(&p) != d2.fin.contains(&q) {
            return None;
        }
        for a in 0..d1.alphabet.size() {
            match (t1[p][a], t2[q][a]) {
                (None, None) => {}
                (Some(p2), Some(q2)) => match map[p2] {
                    Some(m) if m == q2 => {}
                    Some(_) => return None,
                    None => {
                        if used[q2] {
                            return None;
                        }
                        map[p2] = Some(q2);
                        used[q2] = true;
                        queue.push_back((p2, q2));
                    }
                },
                _ => return None,
            }
        }
    }
    map.into_iter().collect()
}

/// An isomorphism table as a relation between the state spaces.
pub fn iso_relation(d1: &Dfa, d2: &Dfa, iso: &[usize]) -> Rel {
    Rel::from_function(d1.states.clone(), d2.states.clone(), iso).expect("iso is a total function")
}

/// Language equality, decided by comparing minimal automata.
pub fn nfa_equiv(n1: &Nfa, n2: &Nfa) -> Result<bool> {
    n1.alphabet.expect_eq(&n2.alphabet)?;
    let m1 = minimize(&determinize(n1).0).0;
    let m2 = minimize(&determinize(n2).0).0;
    Ok(iso_check(&m1, &m2).is_some())
}

pub fn language_upto(n: &Nfa, k: usize) -> BTreeSet<Word> {
    n.language_upto(k)
}

pub fn accepts(n: &Nfa, w: &[usize]) -> bool {
    n.accepts(w)
}

/// Accepts every factor of a word of `L(n)`.
pub fn factor_closure(n: &Nfa) -> Nfa {
    let keep: BTreeSet<usize> = n.accessible().intersection(&n.coaccessible()).copied().collect();
    let trans = n
        .trans
        .iter()
        .copied()
        .filter(|(p, _, q)| keep.contains(p) && keep.contains(q))
        .collect::<Vec<_>>();
    Nfa::new(n.alphabet.clone(), n.states.clone(), trans, keep.clone(), keep).expect("same states")
}

/// Accepts the words of `L(n)` read between states entered after arbitrarily
/// long prefixes and left with arbitrarily long suffixes.
pub fn prune_language(n: &Nfa) -> Nfa {
    let g = n.graph();
    let len = n.num_states();
    let initial = graph::reach_by_long_paths(&g, &n.initial, len);
    let fin = graph::reach_by_long_paths(&graph::reverse(&g), &n.fin, len);
    n.with_boundary(initial, fin).expect("same states")
}

pub fn is_factor_closed(n: &Nfa) -> bool {
    nfa_equiv(n, &factor_closure(n)).expect("same alphabet")
}

pub fn is_pruned_lang(n: &Nfa) -> bool {
    nfa_equiv(n, &prune_language(n)).expect("same alphabet")
}
