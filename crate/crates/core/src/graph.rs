//! Reachability on the unlabeled graph underlying an automaton.
//!
//! "Arbitrarily long path" is finitized as "path of length at least the number
//! of states": such a path repeats a state, so it can be pumped forever.

use std::collections::BTreeSet;

/// Successor lists of a graph on `0..n`.
pub type Adjacency = Vec<Vec<usize>>;

pub fn adjacency(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Adjacency {
    let mut adj = vec![Vec::new(); n];
    for (p, q) in edges {
        adj[p].push(q);
    }
    for succ in &mut adj {
        succ.sort_unstable();
        succ.dedup();
    }
    adj
}

pub fn reverse(adj: &Adjacency) -> Adjacency {
    adjacency(
        adj.len(),
        adj.iter()
            .enumerate()
            .flat_map(|(p, succ)| succ.iter().map(move |&q| (q, p))),
    )
}

/// States reachable from `start` (including `start`).
pub fn reach(adj: &Adjacency, start: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut seen = start.clone();
    let mut stack: Vec<usize> = start.iter().copied().collect();
    while let Some(p) = stack.pop() {
        for &q in &adj[p] {
            if seen.insert(q) {
                stack.push(q);
            }
        }
    }
    seen
}

/// States reachable from `start` by a path of length at least `len`.
pub fn reach_by_long_paths(adj: &Adjacency, start: &BTreeSet<usize>, len: usize) -> BTreeSet<usize> {
    let mut layer = start.clone();
    for _ in 0..len {
        layer = layer.iter().flat_map(|&p| adj[p].iter().copied()).collect();
        if layer.is_empty() {
            return layer;
        }
    }
    reach(adj, &layer)
}

/// States from which some path of exactly `len` steps leaves.
pub fn starts_of_paths(adj: &Adjacency, len: usize) -> BTreeSet<usize> {
    let mut alive: BTreeSet<usize> = (0..adj.len()).collect();
    for _ in 0..len {
        let next: BTreeSet<usize> = (0..adj.len())
            .filter(|&p| adj[p].iter().any(|q| alive.contains(q)))
            .collect();
        if next == alive {
            break;
        }
        alive = next;
    }
    alive
}
