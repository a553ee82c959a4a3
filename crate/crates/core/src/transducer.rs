//! Finite-word transducers, their behaviors, and the constructions that make
//! regular relations a category.
//!
//! A transducer `(T, A, B, Q, I, F)` stores `T` as a [`Rel`] from `A × Q` to
//! `B × Q`. A run `q0 -a1/b1-> q1 ... -ak/bk-> qk` with `q0 ∈ I`, `qk ∈ F`
//! transforms `a1..ak` into `b1..bk`; the behavior is the set of all such pairs.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::alphabet::Obj;
use crate::error::{Error, Result};
use crate::par::Execution;
use crate::rel::Rel;

/// A finite word; each letter is a tuple index of some [`Obj`].
pub type Word = Vec<usize>;

/// All words of length `k` over an alphabet of `n` letters, in lexicographic order.
pub fn words_of_len(n: usize, k: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..n).map(move |a| {
                    let mut w = w.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    out
}

/// A uniform relation truncated to words of length at most `max_len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformRelationSample {
    pub input: Obj,
    pub output: Obj,
    pub max_len: usize,
    pub pairs: BTreeSet<(Word, Word)>,
}

impl UniformRelationSample {
    pub fn new(input: Obj, output: Obj, max_len: usize) -> Self {
        UniformRelationSample {
            input,
            output,
            max_len,
            pairs: BTreeSet::new(),
        }
    }

    /// Letterwise lift of `r`, truncated at `max_len`.
    pub fn lift(r: &Rel, max_len: usize) -> Self {
        let mut s = UniformRelationSample::new(r.dom().clone(), r.cod().clone(), max_len);
        let letters: Vec<(usize, usize)> = r.pairs().iter().copied().collect();
        let mut layer: Vec<(Word, Word)> = vec![(Vec::new(), Vec::new())];
        for k in 0..=max_len {
            s.pairs.extend(layer.iter().cloned());
            if k == max_len {
                break;
            }
            layer = layer
                .iter()
                .flat_map(|(w, v)| {
                    letters.iter().map(move |&(a, b)| {
                        let mut w = w.clone();
                        let mut v = v.clone();
                        w.push(a);
                        v.push(b);
                        (w, v)
                    })
                })
                .collect();
        }
        s
    }

    /// Pairs sorted by length, then lexicographically.
    pub fn sorted_pairs(&self) -> Vec<&(Word, Word)> {
        let mut v: Vec<_> = self.pairs.iter().collect();
        v.sort_by(|x, y| (x.0.len(), &x.0, &x.1).cmp(&(y.0.len(), &y.0, &y.1)));
        v
    }

    /// Relational composition: `self` first, then `next`.
    pub fn then(&self, next: &UniformRelationSample) -> Result<Self> {
        self.output.expect_eq(&next.input)?;
        let mut by_mid: HashMap<&Word, Vec<&Word>> = HashMap::new();
        for (m, z) in &next.pairs {
            by_mid.entry(m).or_default().push(z);
        }
        let mut out = UniformRelationSample::new(
            self.input.clone(),
            next.output.clone(),
            self.max_len.min(next.max_len),
        );
        for (x, m) in &self.pairs {
            if let Some(zs) = by_mid.get(m) {
                out.pairs.extend(zs.iter().map(|z| (x.clone(), (*z).clone())));
            }
        }
        Ok(out)
    }

    /// The uniform product: equal-length pairs zipped position by position.
    pub fn zip(&self, other: &UniformRelationSample) -> Self {
        let (dn, cn) = (other.input.size(), other.output.size());
        let mut by_len: BTreeMap<usize, Vec<&(Word, Word)>> = BTreeMap::new();
        for p in &other.pairs {
            by_len.entry(p.0.len()).or_default().push(p);
        }
        let mut out = UniformRelationSample::new(
            self.input.concat(&other.input),
            self.output.concat(&other.output),
            self.max_len.min(other.max_len),
        );
        for (w1, v1) in &self.pairs {
            for (w2, v2) in by_len.get(&w1.len()).into_iter().flatten() {
                let w = w1.iter().zip(w2).map(|(&a, &c)| a * dn + c).collect();
                let v = v1.iter().zip(v2).map(|(&b, &d)| b * cn + d).collect();
                out.pairs.insert((w, v));
            }
        }
        out
    }

    /// Keeps only pairs of length at most `n`.
    pub fn truncate(&self, n: usize) -> Self {
        UniformRelationSample {
            input: self.input.clone(),
            output: self.output.clone(),
            max_len: self.max_len.min(n),
            pairs: self.pairs.iter().filter(|(w, _)| w.len() <= n).cloned().collect(),
        }
    }
}

/// `T ⊆ (A × Q) × (B × Q)` as an explicit edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub from: usize,
    pub input: usize,
    pub output: usize,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transducer {
    input: Obj,
    output: Obj,
    states: Obj,
    trans: Rel,
    initial: BTreeSet<usize>,
    fin: BTreeSet<usize>,
}

impl Transducer {
    pub fn new(
        input: Obj,
        output: Obj,
        states: Obj,
        trans: Rel,
        initial: BTreeSet<usize>,
        fin: BTreeSet<usize>,
    ) -> Result<Self> {
        input.concat(&states).expect_eq(trans.dom())?;
        output.concat(&states).expect_eq(trans.cod())?;
        for &q in initial.iter().chain(&fin) {
            states.check(q)?;
        }
        Ok(Transducer {
            input,
            output,
            states,
            trans,
            initial,
            fin,
        })
    }

    pub fn from_edges(
        input: Obj,
        output: Obj,
        states: Obj,
        edges: impl IntoIterator<Item = Edge>,
        initial: BTreeSet<usize>,
        fin: BTreeSet<usize>,
    ) -> Result<Self> {
        let nq = states.size();
        let mut pairs = Vec::new();
        for e in edges {
            states.check(e.from)?;
            states.check(e.to)?;
            input.check(e.input)?;
            output.check(e.output)?;
            pairs.push((e.input * nq + e.from, e.output * nq + e.to));
        }
        let trans = Rel::new(input.concat(&states), output.concat(&states), pairs)?;
        Transducer::new(input, output, states, trans, initial, fin)
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

    pub fn initial(&self) -> &BTreeSet<usize> {
        &self.initial
    }

    pub fn fin(&self) -> &BTreeSet<usize> {
        &self.fin
    }

    pub fn with_boundary(&self, initial: BTreeSet<usize>, fin: BTreeSet<usize>) -> Result<Self> {
        Transducer::new(
            self.input.clone(),
            self.output.clone(),
            self.states.clone(),
            self.trans.clone(),
            initial,
            fin,
        )
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let nq = self.states.size();
        self.trans.pairs().iter().map(move |&(x, y)| Edge {
            from: x % nq,
            input: x / nq,
            output: y / nq,
            to: y % nq,
        })
    }

    /// Outgoing edges grouped by source state.
    pub fn edges_by_source(&self) -> Vec<Vec<Edge>> {
        let mut out = vec![Vec::new(); self.states.size()];
        for e in self.edges() {
            out[e.from].push(e);
        }
        out
    }

    /// Behavior by enumerating runs, level by level.
    pub fn behavior_upto(&self, n: usize) -> UniformRelationSample {
        let mut sample = UniformRelationSample::new(self.input.clone(), self.output.clone(), n);
        let by_source = self.edges_by_source();
        let mut frontier: BTreeMap<(Word, Word), BTreeSet<usize>> = BTreeMap::new();
        if !self.initial.is_empty() {
            frontier.insert((Vec::new(), Vec::new()), self.initial.clone());
        }
        for k in 0..=n {
            for (pair, states) in &frontier {
                if !states.is_disjoint(&self.fin) {
                    sample.pairs.insert(pair.clone());
                }
            }
            if k == n {
                break;
            }
            let mut next: BTreeMap<(Word, Word), BTreeSet<usize>> = BTreeMap::new();
            for ((w, v), states) in &frontier {
                for &q in states {
                    for e in &by_source[q] {
                        let mut w2 = w.clone();
                        let mut v2 = v.clone();
                        w2.push(e.input);
                        v2.push(e.output);
                        next.entry((w2, v2)).or_default().insert(e.to);
                    }
                }
            }
            frontier = next;
        }
        sample
    }

    /// Behavior through the lift of the transition relation composed with the
    /// transposed finite shift on the state wire.
    pub fn behavior_via_shift_upto(&self, n: usize) -> UniformRelationSample {
        self.behavior_via_shift_upto_with(n, Execution::default())
    }

    pub fn behavior_via_shift_upto_with(&self, n: usize, exec: Execution) -> UniformRelationSample {
        let nq = self.states.size();
        let mut letters: HashMap<(usize, usize), Vec<(usize, usize)>> = HashMap::new();
        for e in self.edges() {
            letters.entry((e.from, e.to)).or_default().push((e.input, e.output));
        }
        let per_len = exec.map_range(0..n + 1, |k| {
            let mut out = BTreeSet::new();
            let shift = finite_shift_at(nq, &self.initial, &self.fin, k);
            // (u, t) ∈ transpose(shift)  ⟺  (t, u) ∈ shift
            for (t, u) in &shift {
                let mut partial: Vec<(Word, Word)> = vec![(Vec::new(), Vec::new())];
                for i in 0..k {
                    let Some(ls) = letters.get(&(u[i], t[i])) else {
                        partial.clear();
                        break;
                    };
                    partial = partial
                        .iter()
                        .flat_map(|(w, v)| {
                            ls.iter().map(move |&(a, b)| {
                                let mut w = w.clone();
                                let mut v = v.clone();
                                w.push(a);
                                v.push(b);
                                (w, v)
                            })
                        })
                        .collect();
                }
                out.extend(partial);
            }
            out
        });
        let mut sample = UniformRelationSample::new(self.input.clone(), self.output.clone(), n);
        for s in per_len {
            sample.pairs.extend(s);
        }
        sample
    }

    /// The same machine read as an automaton over `input × output`.
    pub fn to_automaton(&self) -> Transducer {
        let nb = self.output.size();
        let nq = self.states.size();
        let pairs = self
            .edges()
            .map(|e| ((e.input * nb + e.output) * nq + e.from, e.to))
            .collect::<Vec<_>>();
        let letters = self.input.concat(&self.output);
        Transducer {
            trans: Rel::new(letters.concat(&self.states), self.states.clone(), pairs)
                .expect("indices stay in range"),
            input: letters,
            output: Obj::unit(),
            states: self.states.clone(),
            initial: self.initial.clone(),
            fin: self.fin.clone(),
        }
    }

    /// Inverse of [`Transducer::to_automaton`]: splits the letters of an
    /// automaton over `input × output`.
    pub fn from_automaton(aut: &Transducer, input: &Obj, output: &Obj) -> Result<Transducer> {
        if !aut.output.is_unit() {
            return Err(Error::Precondition(format!(
                "expected an automaton (unit output), found output `{}`",
                aut.output
            )));
        }
        input.concat(output).expect_eq(&aut.input)?;
        let nb = output.size();
        let edges = aut.edges().map(|e| Edge {
            from: e.from,
            input: e.input / nb,
            output: e.input % nb,
            to: e.to,
        });
        Transducer::from_edges(
            input.clone(),
            output.clone(),
            aut.states.clone(),
            edges.collect::<Vec<_>>(),
            aut.initial.clone(),
            aut.fin.clone(),
        )
    }
}

/// The finite shift `⟨I|F⟩` on words of length `k` over `n` letters:
/// all `(w, v)` with `i·w = v·f` for some `i ∈ I`, `f ∈ F`.
pub fn finite_shift_at(
    n: usize,
    initial: &BTreeSet<usize>,
    fin: &BTreeSet<usize>,
    k: usize,
) -> BTreeSet<(Word, Word)> {
    let mut out = BTreeSet::new();
    if k == 0 {
        if !initial.is_disjoint(fin) {
            out.insert((Vec::new(), Vec::new()));
        }
        return out;
    }
    for w in words_of_len(n, k) {
        if !fin.contains(&w[k - 1]) {
            continue;
        }
        for &i in initial {
            let mut v = Vec::with_capacity(k);
            v.push(i);
            v.extend_from_slice(&w[..k - 1]);
            out.insert((w.clone(), v));
        }
    }
    out
}

/// Sequential composition: `t1` first, then `t2`.
pub fn compose_transducers(t1: &Transducer, t2: &Transducer) -> Result<Transducer> {
    t1.output.expect_eq(&t2.input)?;
    let np = t2.states.size();
    let mut by_input: HashMap<usize, Vec<Edge>> = HashMap::new();
    for e in t2.edges() {
        by_input.entry(e.input).or_default().push(e);
    }
    let mut edges = BTreeSet::new();
    for e1 in t1.edges() {
        for e2 in by_input.get(&e1.output).into_iter().flatten() {
            edges.insert(Edge {
                from: e1.from * np + e2.from,
                input: e1.input,
                output: e2.output,
                to: e1.to * np + e2.to,
            });
        }
    }
    Transducer::from_edges(
        t1.input.clone(),
        t2.output.clone(),
        t1.states.concat(&t2.states),
        edges,
        pair_set(&t1.initial, &t2.initial, np),
        pair_set(&t1.fin, &t2.fin, np),
    )
}

/// Parallel product; its behavior is the positionwise zip of the behaviors.
pub fn product_transducers(t1: &Transducer, t2: &Transducer) -> Transducer {
    let np = t2.states.size();
    let (nc, nd) = (t2.input.size(), t2.output.size());
    let mut edges = BTreeSet::new();
    let e2s: Vec<Edge> = t2.edges().collect();
    for e1 in t1.edges() {
        for e2 in &e2s {
            edges.insert(Edge {
                from: e1.from * np + e2.from,
                input: e1.input * nc + e2.input,
                output: e1.output * nd + e2.output,
                to: e1.to * np + e2.to,
            });
        }
    }
    Transducer::from_edges(
        t1.input.concat(&t2.input),
        t1.output.concat(&t2.output),
        t1.states.concat(&t2.states),
        edges,
        pair_set(&t1.initial, &t2.initial, np),
        pair_set(&t1.fin, &t2.fin, np),
    )
    .expect("product of well-typed transducers is well-typed")
}

fn pair_set(a: &BTreeSet<usize>, b: &BTreeSet<usize>, nb: usize) -> BTreeSet<usize> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| x * nb + y)).collect()
}

/// One-state transducer whose transition relation is `r` itself.
pub fn lift_transducer(r: &Rel) -> Transducer {
    let states = Obj::unit();
    Transducer::new(
        r.dom().clone(),
        r.cod().clone(),
        states,
        r.clone(),
        BTreeSet::from([0]),
        BTreeSet::from([0]),
    )
    .expect("a relation is a one-state transition relation")
}

pub fn to_automaton(t: &Transducer) -> Transducer {
    t.to_automaton()
}
