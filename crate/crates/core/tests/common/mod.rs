//! Brute-force oracles shared by the integration tests. Everything here is
//! deliberately naive: enumerate candidates and check definitions.
#![allow(dead_code)]

use std::collections::BTreeSet;

use reltrans::automata::Nfa;
use reltrans::transducer::{words_of_len, Transducer, Word};
use reltrans::{Obj, Rel};

/// `r` then `s`, by enumerating every middle element.
pub fn compose(r: &Rel, s: &Rel) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for x in 0..r.dom().size() {
        for z in 0..s.cod().size() {
            if (0..r.cod().size()).any(|y| r.contains(x, y) && s.contains(y, z)) {
                out.insert((x, z));
            }
        }
    }
    out
}

/// Does some run of `t` read `w`, write `v`, start in I and stop in F?
pub fn transducer_relates(t: &Transducer, w: &[usize], v: &[usize]) -> bool {
    let nq = t.states().size();
    let mut cur: BTreeSet<usize> = t.initial().clone();
    for (&a, &b) in w.iter().zip(v) {
        cur = (0..nq)
            .filter(|&q2| cur.iter().any(|&q| t.trans().contains(a * nq + q, b * nq + q2)))
            .collect();
    }
    !cur.is_disjoint(t.fin())
}

/// Behavior by testing every pair of equal-length words.
pub fn behavior(t: &Transducer, n: usize) -> BTreeSet<(Word, Word)> {
    let mut out = BTreeSet::new();
    for k in 0..=n {
        for w in words_of_len(t.input().size(), k) {
            for v in words_of_len(t.output().size(), k) {
                if transducer_relates(t, &w, &v) {
                    out.insert((w.clone(), v));
                }
            }
        }
    }
    out
}

/// `i·w = v·f` for some `i ∈ I`, `f ∈ F`, over every candidate pair.
pub fn finite_shift(n: usize, i: &BTreeSet<usize>, f: &BTreeSet<usize>, k: usize) -> BTreeSet<(Word, Word)> {
    let mut out = BTreeSet::new();
    for w in words_of_len(n, k) {
        for v in words_of_len(n, k) {
            let hit = i.iter().any(|&x| {
                f.iter().any(|&y| {
                    let mut lhs = vec![x];
                    lhs.extend(&w);
                    let mut rhs = v.clone();
                    rhs.push(y);
                    lhs == rhs
                })
            });
            if hit {
                out.insert((w.clone(), v));
            }
        }
    }
    out
}

pub fn accepts_from(n: &Nfa, start: &BTreeSet<usize>, w: &[usize]) -> bool {
    let mut cur = start.clone();
    for &a in w {
        cur = n
            .trans()
            .iter()
            .filter(|(p, x, _)| *x == a && cur.contains(p))
            .map(|&(_, _, q)| q)
            .collect();
    }
    !cur.is_disjoint(n.fin())
}

/// Accepted words up to length `k`, testing every word.
pub fn language(n: &Nfa, k: usize) -> BTreeSet<Word> {
    (0..=k)
        .flat_map(|len| words_of_len(n.alphabet().size(), len))
        .filter(|w| accepts_from(n, n.initial(), w))
        .collect()
}

/// Words of length at most `k` read from `q` into a final state.
pub fn follow_language(n: &Nfa, q: usize, k: usize) -> BTreeSet<Word> {
    let start = BTreeSet::from([q]);
    (0..=k)
        .flat_map(|len| words_of_len(n.alphabet().size(), len))
        .filter(|w| accepts_from(n, &start, w))
        .collect()
}

/// States that start a path of `len` steps, by enumerating all paths.
pub fn starts_path(edges: &BTreeSet<(usize, usize)>, q: usize, len: usize) -> bool {
    if len == 0 {
        return true;
    }
    edges.iter().any(|&(p, r)| p == q && starts_path(edges, r, len - 1))
}

pub fn ends_path(edges: &BTreeSet<(usize, usize)>, q: usize, len: usize) -> bool {
    let rev: BTreeSet<(usize, usize)> = edges.iter().map(|&(p, r)| (r, p)).collect();
    starts_path(&rev, q, len)
}

pub fn render_word(o: &Obj, w: &[usize]) -> String {
    w.iter().map(|&a| o.render(a)).collect::<Vec<_>>().join(" ")
}

/// A shortest word accepted by exactly one of the automata, found by a
/// breadth-first search over pairs of reachable state sets.
pub fn distinguishing_word(n1: &Nfa, n2: &Nfa) -> Option<Word> {
    use std::collections::{HashSet, VecDeque};
    let step = |n: &Nfa, s: &BTreeSet<usize>, a: usize| -> BTreeSet<usize> {
        n.trans().iter().filter(|(p, x, _)| *x == a && s.contains(p)).map(|&(_, _, q)| q).collect()
    };
    let start = (n1.initial().clone(), n2.initial().clone());
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start, Vec::new())]);
    while let Some(((s1, s2), w)) = queue.pop_front() {
        if s1.is_disjoint(n1.fin()) != s2.is_disjoint(n2.fin()) {
            return Some(w);
        }
        for a in 0..n1.alphabet().size() {
            let next = (step(n1, &s1, a), step(n2, &s2, a));
            if seen.insert(next.clone()) {
                let mut w2 = w.clone();
                w2.push(a);
                queue.push_back((next, w2));
            }
        }
    }
    None
}
