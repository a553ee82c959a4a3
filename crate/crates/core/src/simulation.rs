//! Checking simulation certificates between transducers.
//!
//! A certificate is a relation `s` from the states `D` of the second machine
//! to the states `C` of the first. On finite words it must satisfy
//!
//! 1. `point(I)  ⊲  s ∘ point(J)`
//! 2. `R ∘ (id_A × s)  ⊲  (id_B × s) ∘ T`
//! 3. `copoint(F) ∘ s  ⊲  copoint(G)`
//!
//! where `⊲` is `=`, `⊆` or `⊇`. Equality certifies equal behaviors, `⊆` that
//! the first behavior is included in the second, `⊇` the converse.
//! On bi-infinite words only (2) remains, together with conditions on states
//! lying on arbitrarily long paths.

use std::collections::BTreeSet;
use std::fmt;

use crate::alphabet::Obj;
use crate::automata::{determinize, minimize, Dfa, Nfa};
use crate::error::{Error, Result};
use crate::graph;
use crate::rel::Rel;
use crate::sofic::ZTransducer;
use crate::transducer::Transducer;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SimMode {
    TwoSided,
    Backward,
    Forward,
}

impl SimMode {
    pub fn name(self) -> &'static str {
        match self {
            SimMode::TwoSided => "two-sided",
            SimMode::Backward => "backward",
            SimMode::Forward => "forward",
        }
    }

    pub fn parse(s: &str) -> Option<SimMode> {
        match s {
            "two-sided" => Some(SimMode::TwoSided),
            "backward" => Some(SimMode::Backward),
            "forward" => Some(SimMode::Forward),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimCertificate {
    /// From the states of the second machine to those of the first.
    pub s: Rel,
    pub mode: SimMode,
}

impl SimCertificate {
    pub fn new(s: Rel, mode: SimMode) -> Self {
        SimCertificate { s, mode }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    Initial,
    Transition,
    Final,
    DomainPaths,
    CodomainPaths,
}

impl Condition {
    pub fn name(self) -> &'static str {
        match self {
            Condition::Initial => "initial",
            Condition::Transition => "transition",
            Condition::Final => "final",
            Condition::DomainPaths => "domain-paths",
            Condition::CodomainPaths => "codomain-paths",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// What makes a condition fail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// A pair on one side of the (in)equation but not the other.
    Pair {
        from: usize,
        to: usize,
        /// `true` if the pair is in the left-hand side only.
        left_only: bool,
        rendered: (String, String),
    },
    /// A state on a long path that the certificate misses.
    State { state: usize, rendered: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimReport {
    pub failed: Option<(Condition, Witness)>,
}

impl SimReport {
    pub fn pass() -> Self {
        SimReport { failed: None }
    }

    pub fn passed(&self) -> bool {
        self.failed.is_none()
    }

    pub fn failed_condition(&self) -> Option<Condition> {
        self.failed.as_ref().map(|(c, _)| *c)
    }
}

/// The two sides of one relational (in)equation.
struct Sides {
    lhs: Rel,
    rhs: Rel,
}

fn compare(cond: Condition, sides: &Sides, mode: SimMode) -> Option<(Condition, Witness)> {
    let (lhs, rhs) = (sides.lhs.pairs(), sides.rhs.pairs());
    let left_only = lhs.difference(rhs).next().copied();
    let right_only = rhs.difference(lhs).next().copied();
    let found = match mode {
        SimMode::TwoSided => left_only.map(|p| (p, true)).or(right_only.map(|p| (p, false))),
        SimMode::Backward => left_only.map(|p| (p, true)),
        SimMode::Forward => right_only.map(|p| (p, false)),
    };
    found.map(|((from, to), left_only)| {
        let rendered = (sides.lhs.dom().render(from), sides.lhs.cod().render(to));
        (
            cond,
            Witness::Pair {
                from,
                to,
                left_only,
                rendered,
            },
        )
    })
}

struct Machine<'a> {
    input: &'a Obj,
    output: &'a Obj,
    states: &'a Obj,
    trans: &'a Rel,
}

impl<'a> From<&'a Transducer> for Machine<'a> {
    fn from(t: &'a Transducer) -> Self {
        Machine {
            input: t.input(),
            output: t.output(),
            states: t.states(),
            trans: t.trans(),
        }
    }
}

impl<'a> From<&'a ZTransducer> for Machine<'a> {
    fn from(t: &'a ZTransducer) -> Self {
        Machine {
            input: t.input(),
            output: t.output(),
            states: t.states(),
            trans: t.trans(),
        }
    }
}

fn check_types(m1: &Machine, m2: &Machine, s: &Rel) -> Result<()> {
    m1.input.expect_eq(m2.input)?;
    m1.output.expect_eq(m2.output)?;
    m2.states.expect_eq(s.dom())?;
    m1.states.expect_eq(s.cod())
}

fn transition_sides(m1: &Machine, m2: &Machine, s: &Rel) -> Sides {
    let lhs = Rel::identity(m1.input).product(s).then(m1.trans).expect("typed");
    let rhs = m2.trans.then(&Rel::identity(m1.output).product(s)).expect("typed");
    Sides { lhs, rhs }
}

fn fin_sides(cond: Condition, m1: &Transducer, m2: &Transducer, s: &Rel) -> Sides {
    match cond {
        Condition::Initial => Sides {
            lhs: Rel::point(m1.states(), m1.initial()).expect("typed"),
            rhs: Rel::point(m2.states(), m2.initial()).expect("typed").then(s).expect("typed"),
        },
        Condition::Transition => transition_sides(&m1.into(), &m2.into(), s),
        Condition::Final => Sides {
            lhs: s.then(&Rel::copoint(m1.states(), m1.fin()).expect("typed")).expect("typed"),
            rhs: Rel::copoint(m2.states(), m2.fin()).expect("typed"),
        },
        _ => unreachable!("path conditions only apply to bi-infinite words"),
    }
}

/// Checks a certificate between transducers on finite words.
pub fn check_fin(m1: &Transducer, m2: &Transducer, cert: &SimCertificate) -> Result<SimReport> {
    check_types(&m1.into(), &m2.into(), &cert.s)?;
    for cond in [Condition::Initial, Condition::Transition, Condition::Final] {
        if let Some(f) = compare(cond, &fin_sides(cond, m1, m2, &cert.s), cert.mode) {
            return Ok(SimReport { failed: Some(f) });
        }
    }
    Ok(SimReport::pass())
}

/// States of `m2` that start a path of length `card(D)`.
fn long_path_starts(m: &ZTransducer) -> BTreeSet<usize> {
    graph::starts_of_paths(&m.graph(), m.states().size())
}

/// States of `m1` that end a path of length `card(C)`.
fn long_path_ends(m: &ZTransducer) -> BTreeSet<usize> {
    graph::starts_of_paths(&graph::reverse(&m.graph()), m.states().size())
}

/// Checks a certificate between Z-transducers (or presentations, through
/// [`crate::sofic::Presentation::to_ztransducer`]).
pub fn check_inf(m1: &ZTransducer, m2: &ZTransducer, cert: &SimCertificate) -> Result<SimReport> {
    check_types(&m1.into(), &m2.into(), &cert.s)?;
    let sides = transition_sides(&m1.into(), &m2.into(), &cert.s);
    if let Some(f) = compare(Condition::Transition, &sides, cert.mode) {
        return Ok(SimReport { failed: Some(f) });
    }
    if cert.mode != SimMode::Backward {
        let dom = cert.s.domain_of_definition();
        if let Some(&q) = long_path_starts(m2).difference(&dom).next() {
            return Ok(SimReport {
                failed: Some((
                    Condition::DomainPaths,
                    Witness::State {
                        state: q,
                        rendered: m2.states().render(q),
                    },
                )),
            });
        }
    }
    if cert.mode != SimMode::Forward {
        let cod = cert.s.range();
        if let Some(&q) = long_path_ends(m1).difference(&cod).next() {
            return Ok(SimReport {
                failed: Some((
                    Condition::CodomainPaths,
                    Witness::State {
                        state: q,
                        rendered: m1.states().render(q),
                    },
                )),
            });
        }
    }
    Ok(SimReport::pass())
}

fn pair_violates(sides: &Sides, w: &Witness) -> bool {
    match w {
        Witness::Pair { from, to, left_only, .. } => {
            let (l, r) = (sides.lhs.contains(*from, *to), sides.rhs.contains(*from, *to));
            if *left_only {
                l && !r
            } else {
                r && !l
            }
        }
        Witness::State { .. } => false,
    }
}

/// Re-evaluates the named condition and confirms that the witness violates it.
pub fn recheck_fin(m1: &Transducer, m2: &Transducer, cert: &SimCertificate, report: &SimReport) -> bool {
    match &report.failed {
        None => false,
        Some((cond, w)) => pair_violates(&fin_sides(*cond, m1, m2, &cert.s), w),
    }
}

pub fn recheck_inf(m1: &ZTransducer, m2: &ZTransducer, cert: &SimCertificate, report: &SimReport) -> bool {
    match &report.failed {
        None => false,
        Some((Condition::Transition, w)) => pair_violates(&transition_sides(&m1.into(), &m2.into(), &cert.s), w),
        Some((Condition::DomainPaths, Witness::State { state, .. })) => {
            long_path_starts(m2).contains(state) && !cert.s.domain_of_definition().contains(state)
        }
        Some((Condition::CodomainPaths, Witness::State { state, .. })) => {
            long_path_ends(m1).contains(state) && !cert.s.range().contains(state)
        }
        _ => false,
    }
}

/// The subset automaton of `n` with the "contains" certificate relating it
/// back to `n` (first machine `n`, second the subset automaton).
pub fn certificate_for_determinization(n: &Nfa) -> (Dfa, SimCertificate) {
    let (d, contains) = determinize(n);
    (d, SimCertificate::new(contains, SimMode::TwoSided))
}

/// The minimal automaton with the follow-language certificate (first machine
/// the minimal automaton, second the input).
pub fn certificate_for_minimization(d: &Dfa) -> Result<(Dfa, SimCertificate)> {
    if !d.is_accessible() {
        return Err(Error::Precondition("every state must be accessible".into()));
    }
    let (m, lmap) = minimize(d);
    Ok((m, SimCertificate::new(lmap, SimMode::TwoSided)))
}
