//! Graphviz export.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::automata::Nfa;
use crate::diagram::{FeedbackLabels, Term};
use crate::sofic::Presentation;
use crate::transducer::Transducer;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

struct Graph<'a> {
    states: Vec<String>,
    initial: Vec<usize>,
    fin: Vec<bool>,
    root: Option<usize>,
    /// Labels grouped per (from, to).
    edges: BTreeMap<(usize, usize), Vec<String>>,
    name: &'a str,
}

impl Graph<'_> {
    fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "digraph {} {{", quote(self.name)).unwrap();
        writeln!(out, "  rankdir=LR;").unwrap();
        for (q, name) in self.states.iter().enumerate() {
            let shape = if self.fin[q] { "doublecircle" } else { "circle" };
            let extra = if self.root == Some(q) {
                ", style=\"bold,filled\", fillcolor=lightgrey"
            } else {
                ""
            };
            writeln!(out, "  s{q} [label={}, shape={shape}{extra}];", quote(name)).unwrap();
        }
        for &q in &self.initial {
            writeln!(out, "  init{q} [shape=point, label=\"\"];").unwrap();
            writeln!(out, "  init{q} -> s{q};").unwrap();
        }
        for ((p, q), labels) in &self.edges {
            writeln!(out, "  s{p} -> s{q} [label={}];", quote(&labels.join(", "))).unwrap();
        }
        out.push_str("}\n");
        out
    }
}

pub fn nfa_to_dot(n: &Nfa) -> String {
    let mut edges: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
    for &(p, a, q) in n.trans() {
        edges.entry((p, q)).or_default().push(n.alphabet().render(a));
    }
    Graph {
        states: (0..n.num_states()).map(|q| n.states().render(q)).collect(),
        initial: n.initial().iter().copied().collect(),
        fin: (0..n.num_states()).map(|q| n.fin().contains(&q)).collect(),
        root: None,
        edges,
        name: "automaton",
    }
    .render()
}

pub fn transducer_to_dot(t: &Transducer) -> String {
    let mut edges: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
    for e in t.edges() {
        let label = format!("{}/{}", t.input().render(e.input), t.output().render(e.output));
        edges.entry((e.from, e.to)).or_default().push(label);
    }
    let n = t.states().size();
    Graph {
        states: (0..n).map(|q| t.states().render(q)).collect(),
        initial: t.initial().iter().copied().collect(),
        fin: (0..n).map(|q| t.fin().contains(&q)).collect(),
        root: None,
        edges,
        name: "transducer",
    }
    .render()
}

/// Every state of a presentation is initial and final, so neither is drawn;
/// the root, if given, is highlighted.
pub fn presentation_to_dot(p: &Presentation, root: Option<usize>) -> String {
    let mut edges: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
    for &(s, a, t) in p.trans() {
        edges.entry((s, t)).or_default().push(p.alphabet().render(a));
    }
    Graph {
        states: (0..p.num_states()).map(|q| p.states().render(q)).collect(),
        initial: Vec::new(),
        fin: vec![false; p.num_states()],
        root,
        edges,
        name: "presentation",
    }
    .render()
}

/// The term tree of a diagram.
pub fn term_to_dot<L: FeedbackLabels>(d: &Term<L>) -> String {
    fn walk<L: FeedbackLabels>(d: &Term<L>, next: &mut usize, out: &mut String) -> usize {
        let id = *next;
        *next += 1;
        let label = match d {
            Term::Box(r) => format!("box {} → {}\n{} pairs", r.dom(), r.cod(), r.len()),
            Term::Id(o) => format!("id {o}"),
            Term::Swap(a, b) => format!("swap {a}, {b}"),
            Term::Seq(..) => ";".to_string(),
            Term::Par(..) => "⊗".to_string(),
            Term::Feedback { state, .. } => format!("feedback {state}"),
        };
        writeln!(out, "  n{id} [label={}];", quote(&label)).unwrap();
        let children: Vec<&Term<L>> = match d {
            Term::Seq(a, b) | Term::Par(a, b) => vec![a, b],
            Term::Feedback { body, .. } => vec![body],
            _ => vec![],
        };
        for c in children {
            let cid = walk(c, next, out);
            writeln!(out, "  n{id} -> n{cid};").unwrap();
        }
        id
    }
    let mut out = String::from("digraph \"diagram\" {\n  node [shape=box];\n");
    walk(d, &mut 0, &mut out);
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn automaton_dot() {
        let n = Nfa::build(&["a"], &["0", "1"], &[("0", "a", "0"), ("0", "a", "1")], &["0"], &["1"]).unwrap();
        let dot = nfa_to_dot(&n);
        assert!(dot.starts_with("digraph"));
        assert!(dot.contains("s1 [label=\"1\", shape=doublecircle]"));
        assert!(dot.contains("init0 -> s0"));
        assert!(dot.contains("s0 -> s1 [label=\"a\"]"));
    }

    #[test]
    fn rooted_presentation_dot() {
        let p = Presentation::build(&["a"], &["q"], &[("q", "a", "q")]).unwrap();
        assert!(presentation_to_dot(&p, Some(0)).contains("filled"));
        assert!(!presentation_to_dot(&p, None).contains("filled"));
    }
}
