//! Batch evaluation over many independent machines, sequentially or on the
//! rayon pool (see [`Execution`]). Results keep the input order.

use crate::automata::{determinize, minimize, Dfa, Nfa};
use crate::diagram::{diagrams_equiv, Diagram};
use crate::error::Result;
use crate::par::Execution;
use crate::sofic::{canonical_form, CanonicalForm, Presentation};
use crate::transducer::Transducer;

/// For each transducer, whether both behavior computations agree up to `n`.
pub fn behaviors_agree(ts: &[Transducer], n: usize, exec: Execution) -> Vec<bool> {
    exec.map(ts, |t| {
        t.behavior_upto(n) == t.behavior_via_shift_upto_with(n, Execution::Sequential)
    })
}

pub fn minimal_automata(ns: &[Nfa], exec: Execution) -> Vec<Dfa> {
    exec.map(ns, |n| minimize(&determinize(n).0).0)
}

pub fn canonical_forms(ps: &[Presentation], exec: Execution) -> Vec<CanonicalForm> {
    exec.map(ps, canonical_form)
}

pub fn equivalences(pairs: &[(Diagram, Diagram)], exec: Execution) -> Result<Vec<bool>> {
    exec.map(pairs, |(a, b)| diagrams_equiv(a, b).map(|(eq, _)| eq))
        .into_iter()
        .collect()
}
