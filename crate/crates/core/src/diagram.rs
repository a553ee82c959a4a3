//! String-diagram terms with labeled feedback, their quasi-normal forms
//! (a single relation box under a single feedback, i.e. a transducer), two
//! independent semantics, and the complete equivalence procedure.

use std::collections::BTreeSet;
use std::fmt::Debug;

use crate::alphabet::Obj;
use crate::automata::{determinize, iso_check, iso_relation, minimize, Dfa, Nfa};
use crate::error::{Error, Result};
use crate::rel::Rel;
use crate::simulation::{check_fin, SimCertificate, SimMode, SimReport};
use crate::sofic::{presentations_equiv, ZTransducer};
use crate::transducer::{compose_transducers, lift_transducer, product_transducers, Edge, Transducer, UniformRelationSample};

/// Boundary labels carried by a feedback loop.
pub trait FeedbackLabels: Clone + Debug + PartialEq {
    /// Initial and final states of the loop over the fed-back wire `q`.
    fn boundary(&self, q: &Obj) -> (BTreeSet<usize>, BTreeSet<usize>);
}

/// Labels of a feedback on finite words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Labels {
    pub initial: BTreeSet<usize>,
    pub fin: BTreeSet<usize>,
}

impl FeedbackLabels for Labels {
    fn boundary(&self, _: &Obj) -> (BTreeSet<usize>, BTreeSet<usize>) {
        (self.initial.clone(), self.fin.clone())
    }
}

/// On bi-infinite words a loop has no boundary.
impl FeedbackLabels for () {
    fn boundary(&self, q: &Obj) -> (BTreeSet<usize>, BTreeSet<usize>) {
        let all: BTreeSet<usize> = (0..q.size()).collect();
        (all.clone(), all)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Term<L> {
    Box(Rel),
    Id(Obj),
    Swap(Obj, Obj),
    Seq(Box<Term<L>>, Box<Term<L>>),
    Par(Box<Term<L>>, Box<Term<L>>),
    /// Feeds the last wire `state` of the body's output back into the last
    /// wire of its input.
    Feedback {
        state: Obj,
        labels: L,
        body: Box<Term<L>>,
    },
}

pub type Diagram = Term<Labels>;
pub type ZDiagram = Term<()>;

impl<L: FeedbackLabels> Term<L> {
    pub fn seq(self, next: Term<L>) -> Term<L> {
        Term::Seq(Box::new(self), Box::new(next))
    }

    pub fn par(self, other: Term<L>) -> Term<L> {
        Term::Par(Box::new(self), Box::new(other))
    }

    pub fn feedback(state: Obj, labels: L, body: Term<L>) -> Term<L> {
        Term::Feedback {
            state,
            labels,
            body: Box::new(body),
        }
    }

    pub fn type_of(&self) -> Result<(Obj, Obj)> {
        match self {
            Term::Box(r) => Ok((r.dom().clone(), r.cod().clone())),
            Term::Id(o) => Ok((o.clone(), o.clone())),
            Term::Swap(a, b) => Ok((a.concat(b), b.concat(a))),
            Term::Seq(d1, d2) => {
                let (a, b) = d1.type_of()?;
                let (b2, c) = d2.type_of()?;
                if b != b2 {
                    return Err(Error::IllTyped(format!("sequencing `{b}` into `{b2}`")));
                }
                Ok((a, c))
            }
            Term::Par(d1, d2) => {
                let (a, b) = d1.type_of()?;
                let (c, d) = d2.type_of()?;
                Ok((a.concat(&c), b.concat(&d)))
            }
            Term::Feedback { state, labels, body } => {
                let (x, y) = body.type_of()?;
                let strip = |o: &Obj| {
                    o.strip_suffix(state).ok_or_else(|| {
                        Error::IllTyped(format!("feedback wire `{state}` is not the last wire of `{o}`"))
                    })
                };
                let (a, b) = (strip(&x)?, strip(&y)?);
                let (i, f) = labels.boundary(state);
                for &q in i.iter().chain(&f) {
                    state.check(q)?;
                }
                Ok((a, b))
            }
        }
    }

    /// Number of constructors in the term.
    pub fn size(&self) -> usize {
        match self {
            Term::Box(_) | Term::Id(_) | Term::Swap(..) => 1,
            Term::Seq(a, b) | Term::Par(a, b) => 1 + a.size() + b.size(),
            Term::Feedback { body, .. } => 1 + body.size(),
        }
    }

    pub fn feedback_count(&self) -> usize {
        match self {
            Term::Box(_) | Term::Id(_) | Term::Swap(..) => 0,
            Term::Seq(a, b) | Term::Par(a, b) => a.feedback_count() + b.feedback_count(),
            Term::Feedback { body, .. } => 1 + body.feedback_count(),
        }
    }

    /// Relabels every feedback.
    pub fn map_labels<M: FeedbackLabels>(&self, f: &impl Fn(&Obj, &L) -> M) -> Term<M> {
        match self {
            Term::Box(r) => Term::Box(r.clone()),
            Term::Id(o) => Term::Id(o.clone()),
            Term::Swap(a, b) => Term::Swap(a.clone(), b.clone()),
            Term::Seq(a, b) => a.map_labels(f).seq(b.map_labels(f)),
            Term::Par(a, b) => a.map_labels(f).par(b.map_labels(f)),
            Term::Feedback { state, labels, body } => Term::feedback(state.clone(), f(state, labels), body.map_labels(f)),
        }
    }

    /// Turns an `A → B` term into a `B × A → unit` one by bending the output
    /// back with a cap.
    pub fn bend(&self) -> Result<Term<L>> {
        let (_, b) = self.type_of()?;
        Ok(Term::Id(b.clone()).par(self.clone()).seq(Term::Box(Rel::cap(&b))))
    }
}

impl Diagram {
    pub fn labeled(state: Obj, initial: BTreeSet<usize>, fin: BTreeSet<usize>, body: Diagram) -> Diagram {
        Term::feedback(state, Labels { initial, fin }, body)
    }

    pub fn forget_labels(&self) -> ZDiagram {
        self.map_labels(&|_, _| ())
    }
}

/// The diagram `Feedback(Q, I, F, Box(T))` of a transducer.
pub fn encode_transducer(t: &Transducer) -> Diagram {
    Diagram::labeled(
        t.states().clone(),
        t.initial().clone(),
        t.fin().clone(),
        Term::Box(t.trans().clone()),
    )
}

pub fn encode_ztransducer(z: &ZTransducer) -> ZDiagram {
    Term::feedback(z.states().clone(), (), Term::Box(z.trans().clone()))
}

fn normal_form_generic<L: FeedbackLabels>(d: &Term<L>) -> Result<Transducer> {
    match d {
        Term::Box(r) => Ok(lift_transducer(r)),
        Term::Id(o) => Ok(lift_transducer(&Rel::identity(o))),
        Term::Swap(a, b) => Ok(lift_transducer(&Rel::swap(a, b))),
        Term::Seq(a, b) => compose_transducers(&normal_form_generic(a)?, &normal_form_generic(b)?),
        Term::Par(a, b) => Ok(product_transducers(&normal_form_generic(a)?, &normal_form_generic(b)?)),
        Term::Feedback { state, labels, body } => {
            let (a, b) = d.type_of()?;
            let inner = normal_form_generic(body)?;
            let nq = state.size();
            let edges: Vec<Edge> = inner
                .edges()
                .map(|e| Edge {
                    from: e.from * nq + e.input % nq,
                    input: e.input / nq,
                    output: e.output / nq,
                    to: e.to * nq + e.output % nq,
                })
                .collect();
            let (i, f) = labels.boundary(state);
            let pair = |outer: &BTreeSet<usize>, wire: &BTreeSet<usize>| -> BTreeSet<usize> {
                outer.iter().flat_map(|&p| wire.iter().map(move |&x| p * nq + x)).collect()
            };
            Transducer::from_edges(
                a,
                b,
                inner.states().concat(state),
                edges,
                pair(inner.initial(), &i),
                pair(inner.fin(), &f),
            )
        }
    }
}

/// The quasi-normal form of a diagram, as a transducer.
pub fn normal_form(d: &Diagram) -> Result<Transducer> {
    d.type_of()?;
    normal_form_generic(d)
}

/// The quasi-normal form of a Z-diagram, as a Z-transducer.
pub fn z_normal_form(d: &ZDiagram) -> Result<ZTransducer> {
    d.type_of()?;
    Ok(ZTransducer::from_transducer(&normal_form_generic(d)?))
}

/// Semantics through the normal form.
pub fn interpret_upto(d: &Diagram, n: usize) -> Result<UniformRelationSample> {
    Ok(normal_form(d)?.behavior_upto(n))
}

/// Semantics by structural recursion on uniform relations: boxes are lifted
/// letterwise and each feedback composes with the transposed finite shift.
pub fn interpret_direct_upto<L: FeedbackLabels>(d: &Term<L>, n: usize) -> Result<UniformRelationSample> {
    d.type_of()?;
    direct(d, n)
}

fn direct<L: FeedbackLabels>(d: &Term<L>, n: usize) -> Result<UniformRelationSample> {
    match d {
        Term::Box(r) => Ok(UniformRelationSample::lift(r, n)),
        Term::Id(o) => Ok(UniformRelationSample::lift(&Rel::identity(o), n)),
        Term::Swap(a, b) => Ok(UniformRelationSample::lift(&Rel::swap(a, b), n)),
        Term::Seq(a, b) => direct(a, n)?.then(&direct(b, n)?),
        Term::Par(a, b) => Ok(direct(a, n)?.zip(&direct(b, n)?)),
        Term::Feedback { state, labels, body } => {
            let (a, b) = d.type_of()?;
            let inner = direct(body, n)?;
            let nq = state.size();
            let (i, f) = labels.boundary(state);
            let mut out = UniformRelationSample::new(a, b, n);
            for (ws, vs) in &inner.pairs {
                let k = ws.len();
                let u: Vec<usize> = ws.iter().map(|x| x % nq).collect();
                let t: Vec<usize> = vs.iter().map(|x| x % nq).collect();
                let in_shift = if k == 0 {
                    !i.is_disjoint(&f)
                } else {
                    i.contains(&u[0]) && f.contains(&t[k - 1]) && (0..k - 1).all(|j| u[j + 1] == t[j])
                };
                if in_shift {
                    out.pairs.insert((
                        ws.iter().map(|x| x / nq).collect(),
                        vs.iter().map(|x| x / nq).collect(),
                    ));
                }
            }
            Ok(out)
        }
    }
}

/// Both semantics, required to agree.
pub fn interpret_checked_upto(d: &Diagram, n: usize) -> Result<UniformRelationSample> {
    let via_nf = interpret_upto(d, n)?;
    let via_direct = interpret_direct_upto(d, n)?;
    if via_nf != via_direct {
        return Err(Error::Inconsistent(format!(
            "normal form gives {} pairs, direct evaluation {}",
            via_nf.pairs.len(),
            via_direct.pairs.len()
        )));
    }
    Ok(via_nf)
}

/// The steps taken on one side of an equivalence check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideCertificate {
    /// The automaton of the bent diagram.
    pub nfa: Nfa,
    pub det: Dfa,
    /// Subsets to states of `nfa`.
    pub contains: Rel,
    pub min: Dfa,
    /// States of `det` to states of `min`.
    pub lmap: Rel,
}

impl SideCertificate {
    fn of(nfa: Nfa) -> Self {
        let (det, contains) = determinize(&nfa);
        let (min, lmap) = minimize(&det);
        SideCertificate {
            nfa,
            det,
            contains,
            min,
            lmap,
        }
    }

    pub fn verify(&self) -> Result<Vec<SimReport>> {
        let det = check_fin(
            &self.nfa.to_transducer(),
            &self.det.to_transducer(),
            &SimCertificate::new(self.contains.clone(), SimMode::TwoSided),
        )?;
        let min = check_fin(
            &self.min.to_transducer(),
            &self.det.to_transducer(),
            &SimCertificate::new(self.lmap.clone(), SimMode::TwoSided),
        )?;
        Ok(vec![det, min])
    }
}

/// The certificate chain behind a verdict of [`diagrams_equiv`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivCertificate {
    pub left: SideCertificate,
    pub right: SideCertificate,
    /// From the left minimal automaton to the right one, when they are isomorphic.
    pub iso: Option<Rel>,
}

impl EquivCertificate {
    /// Re-checks every simulation in the chain. The verdict is `true` iff all
    /// of them pass and an isomorphism is present.
    pub fn verify(&self) -> Result<bool> {
        let mut reports = self.left.verify()?;
        reports.extend(self.right.verify()?);
        if let Some(iso) = &self.iso {
            reports.push(check_fin(
                &self.right.min.to_transducer(),
                &self.left.min.to_transducer(),
                &SimCertificate::new(iso.clone(), SimMode::TwoSided),
            )?);
        }
        Ok(self.iso.is_some() && reports.iter().all(SimReport::passed))
    }

    /// Whether every certificate in the chain checks, whatever the verdict.
    pub fn is_valid(&self) -> Result<bool> {
        let mut reports = self.left.verify()?;
        reports.extend(self.right.verify()?);
        Ok(reports.iter().all(SimReport::passed))
    }
}

/// The automaton over `B × A` of a bent `A → B` diagram.
pub fn bent_automaton(d: &Diagram) -> Result<Nfa> {
    Nfa::from_transducer(&normal_form(&d.bend()?)?)
}

/// Decides equality of the semantics of two diagrams of the same type.
pub fn diagrams_equiv(d1: &Diagram, d2: &Diagram) -> Result<(bool, EquivCertificate)> {
    let (a1, b1) = d1.type_of()?;
    let (a2, b2) = d2.type_of()?;
    a1.expect_eq(&a2)?;
    b1.expect_eq(&b2)?;
    let left = SideCertificate::of(bent_automaton(d1)?);
    let right = SideCertificate::of(bent_automaton(d2)?);
    let iso = iso_check(&left.min, &right.min).map(|m| iso_relation(&left.min, &right.min, &m));
    let equal = iso.is_some();
    Ok((equal, EquivCertificate { left, right, iso }))
}

/// Decides equality of the bi-infinite semantics of two Z-diagrams.
pub fn z_diagrams_equiv(d1: &ZDiagram, d2: &ZDiagram) -> Result<bool> {
    let (a1, b1) = d1.type_of()?;
    let (a2, b2) = d2.type_of()?;
    a1.expect_eq(&a2)?;
    b1.expect_eq(&b2)?;
    let p1 = z_normal_form(&d1.bend()?)?.to_presentation();
    let p2 = z_normal_form(&d2.bend()?)?.to_presentation();
    presentations_equiv(&p1, &p2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlideSide {
    Left,
    Right,
}

/// The two sides of sliding `s : Q' → Q` around a feedback with body
/// `A × Q → B × Q'`:
///
/// - before: `Feedback(Q', I', s⁻¹F, (id_A × s) ; body)`
/// - after: `Feedback(Q, s(I'), F, body ; (id_B × s))`
///
/// `Left` returns `(before, after)`, `Right` the reverse.
pub fn slide(
    s: &Rel,
    body: &Diagram,
    initial: &BTreeSet<usize>,
    fin: &BTreeSet<usize>,
    side: SlideSide,
) -> Result<(Diagram, Diagram)> {
    let (q_new, q) = (s.dom().clone(), s.cod().clone());
    let (x, y) = body.type_of()?;
    let a = x
        .strip_suffix(&q)
        .ok_or_else(|| Error::IllTyped(format!("body input `{x}` does not end with `{q}`")))?;
    let b = y
        .strip_suffix(&q_new)
        .ok_or_else(|| Error::IllTyped(format!("body output `{y}` does not end with `{q_new}`")))?;
    for &i in initial {
        q_new.check(i)?;
    }
    for &f in fin {
        q.check(f)?;
    }
    let before = Diagram::labeled(
        q_new.clone(),
        initial.clone(),
        s.preimage(fin),
        Term::Id(a.clone()).par(Term::Box(s.clone())).seq(body.clone()),
    );
    let after = Diagram::labeled(
        q.clone(),
        s.image(initial),
        fin.clone(),
        body.clone().seq(Term::Id(b).par(Term::Box(s.clone()))),
    );
    Ok(match side {
        SlideSide::Left => (before, after),
        SlideSide::Right => (after, before),
    })
}
