//! Subcommand implementations. Each returns an [`Outcome`] for `main` to
//! print, or a [`CliError`] naming the offending file and its kind.

use std::fmt;
use std::path::{Path, PathBuf};

use reltrans::automata::{determinize, iso_check, minimize};
use reltrans::diagram::{
    diagrams_equiv, interpret_direct_upto, normal_form, z_diagrams_equiv, z_normal_form, EquivCertificate,
    SideCertificate,
};
use reltrans::dot;
use reltrans::transducer::lift_transducer;
use reltrans::simulation::{certificate_for_determinization, certificate_for_minimization, check_fin, check_inf};
use reltrans::sofic::{
    backward_prune, canonical_form, determinize_presentation, factors_upto, forward_prune, minimize_presentation,
    periodic_membership, presentations_equiv, prune, ztransducers_equiv,
};
use reltrans::{
    Alphabet, CanonicalForm, Dfa, Nfa, Obj, Presentation, Rel, RootedPresentation, SimCertificate, SimMode,
    SimReport, Transducer, UniformRelationSample, Witness, ZTransducer,
};
use serde_json::{json, Value};

use crate::format::{self, Document, FormatError};
use crate::verdict::{Status, Verdict};

/// What a successful command prints.
#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    /// A JSON document, printed canonically; exit code 0.
    Json(Value),
    /// A decision; the exit code follows its status.
    Verdict(Verdict),
    /// Plain text (DOT); exit code 0.
    Text(String),
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        match self {
            Outcome::Verdict(v) => v.exit_code(),
            _ => 0,
        }
    }

    pub fn render(&self) -> String {
        match self {
            Outcome::Json(v) => format::to_canonical_string(v),
            Outcome::Verdict(v) => format::to_canonical_string(&v.to_value()),
            Outcome::Text(t) => t.clone(),
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub file: Option<PathBuf>,
    pub kind: Option<String>,
    pub message: String,
}

impl CliError {
    fn new(file: Option<&Path>, kind: Option<&str>, message: impl fmt::Display) -> Self {
        CliError {
            file: file.map(Path::to_path_buf),
            kind: kind.map(str::to_string),
            message: message.to_string(),
        }
    }

    pub fn verdict(&self) -> Verdict {
        Verdict::new(
            Status::Error,
            json!({
                "file": self.file.as_ref().map(|f| f.display().to_string()),
                "kind": self.kind,
                "message": self.message,
            }),
        )
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(file) = &self.file {
            write!(f, "{}: ", file.display())?;
        }
        if let Some(kind) = &self.kind {
            write!(f, "{kind}: ")?;
        }
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

pub type CResult<T> = Result<T, CliError>;

/// A parsed input file, remembered with its path for diagnostics.
pub struct Input {
    pub path: PathBuf,
    pub doc: Document,
}

impl Input {
    pub fn load(path: &Path) -> CResult<Input> {
        let value = format::read_value(path).map_err(|e| CliError::new(Some(path), None, e))?;
        let kind = value.get("kind").and_then(Value::as_str).map(str::to_string);
        let doc = format::parse_document(&value).map_err(|e| CliError::new(Some(path), kind.as_deref(), e))?;
        Ok(Input {
            path: path.to_path_buf(),
            doc,
        })
    }

    fn kind(&self) -> &'static str {
        self.doc.kind()
    }

    /// An error about this file.
    fn err(&self, message: impl fmt::Display) -> CliError {
        CliError::new(Some(&self.path), Some(self.kind()), message)
    }

    fn unsupported(&self, command: &str) -> CliError {
        self.err(format!("`{command}` does not accept this kind"))
    }

    fn check<T>(&self, r: reltrans::Result<T>) -> CResult<T> {
        r.map_err(|e| self.err(e))
    }

    /// The machine as a finite-word transducer, if it is one.
    fn finite_machine(&self) -> Option<Transducer> {
        match &self.doc {
            Document::Transducer(t) => Some(t.clone()),
            Document::Nfa(n) => Some(n.to_transducer()),
            Document::Dfa(d) => Some(d.to_transducer()),
            Document::Relation(r) => Some(lift_transducer(r)),
            _ => None,
        }
    }

    /// The machine as a bi-infinite transducer, if it is one.
    fn infinite_machine(&self) -> Option<ZTransducer> {
        match &self.doc {
            Document::ZTransducer(z) => Some(z.clone()),
            Document::Presentation { presentation, .. } => Some(presentation.to_ztransducer()),
            Document::Transducer(t) => Some(ZTransducer::from_transducer(t)),
            _ => None,
        }
    }

    fn presentation(&self, command: &str) -> CResult<(&Presentation, Option<usize>)> {
        match &self.doc {
            Document::Presentation { presentation, root } => Ok((presentation, *root)),
            _ => Err(self.unsupported(command)),
        }
    }
}

fn io_error(path: &Path, e: std::io::Error) -> CliError {
    CliError::new(Some(path), None, FormatError::Io(e))
}

fn write_json(path: &Path, v: &Value) -> CResult<()> {
    std::fs::write(path, format::to_canonical_string(v)).map_err(|e| io_error(path, e))
}

pub fn sample_to_value(s: &UniformRelationSample) -> Value {
    let pairs: Vec<Value> = s
        .sorted_pairs()
        .into_iter()
        .map(|(w, v)| json!([format::word_to_value(&s.input, w), format::word_to_value(&s.output, v)]))
        .collect();
    json!({
        "input": format::obj_to_value(&s.input),
        "output": format::obj_to_value(&s.output),
        "max_len": s.max_len,
        "pairs": pairs,
    })
}

pub fn report_to_value(r: &SimReport) -> Value {
    match &r.failed {
        None => json!({ "passed": true }),
        Some((condition, witness)) => {
            let witness = match witness {
                Witness::Pair {
                    left_only, rendered, ..
                } => json!({
                    "pair": [rendered.0, rendered.1],
                    "side": if *left_only { "left-only" } else { "right-only" },
                }),
                Witness::State { rendered, .. } => json!({ "state": rendered }),
            };
            json!({ "passed": false, "condition": condition.name(), "witness": witness })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Via {
    Shift,
    Runs,
}

pub fn behavior(file: &Path, max_len: usize, via: Option<Via>) -> CResult<Outcome> {
    let input = Input::load(file)?;
    let sample = |via: Via| -> CResult<UniformRelationSample> {
        match &input.doc {
            Document::Diagram(d) => {
                let t = input.check(normal_form(d))?;
                Ok(match via {
                    Via::Runs => t.behavior_upto(max_len),
                    Via::Shift => t.behavior_via_shift_upto(max_len),
                })
            }
            _ => {
                let t = input.finite_machine().ok_or_else(|| input.unsupported("behavior"))?;
                Ok(match via {
                    Via::Runs => t.behavior_upto(max_len),
                    Via::Shift => t.behavior_via_shift_upto(max_len),
                })
            }
        }
    };
    if let Some(via) = via {
        return Ok(Outcome::Json(sample_to_value(&sample(via)?)));
    }
    let runs = sample(Via::Runs)?;
    let shift = sample(Via::Shift)?;
    if runs != shift {
        return Err(input.err("the run-based and shift-based behaviors disagree"));
    }
    if let Document::Diagram(d) = &input.doc {
        if input.check(interpret_direct_upto(d, max_len))? != runs {
            return Err(input.err("the normal form and the compositional semantics disagree"));
        }
    }
    Ok(Outcome::Json(sample_to_value(&runs)))
}

fn rendered_pairs(r: &Rel) -> Value {
    Value::Array(
        r.pairs()
            .iter()
            .map(|&(x, y)| json!([r.dom().render(x), r.cod().render(y)]))
            .collect(),
    )
}

fn nfa_verdict(left: &Input, right: &Input, n1: &Nfa, n2: &Nfa) -> CResult<Verdict> {
    if n1.alphabet() != n2.alphabet() {
        return Err(right.err(format!(
            "alphabet `{}` differs from `{}` in {}",
            n2.alphabet(),
            n1.alphabet(),
            left.path.display()
        )));
    }
    let (m1, _) = minimize(&determinize(n1).0);
    let (m2, _) = minimize(&determinize(n2).0);
    let iso = iso_check(&m1, &m2);
    let detail = json!({
        "minimal_states": [m1.num_states(), m2.num_states()],
        "iso": iso.as_ref().map(|m| rendered_pairs(&reltrans::automata::iso_relation(&m1, &m2, m))),
    });
    Ok(Verdict::equality(iso.is_some(), detail))
}

fn side_to_value(s: &SideCertificate) -> Value {
    json!({
        "nfa": format::nfa_to_value("nfa", &s.nfa),
        "det": format::nfa_to_value("dfa", s.det.as_nfa()),
        "contains": format::certificate_to_value(&SimCertificate::new(s.contains.clone(), SimMode::TwoSided)),
        "min": format::nfa_to_value("dfa", s.min.as_nfa()),
        "lmap": format::certificate_to_value(&SimCertificate::new(s.lmap.clone(), SimMode::TwoSided)),
    })
}

/// The certificate chain behind a diagram equivalence verdict.
pub fn equiv_certificate_to_value(c: &EquivCertificate) -> Value {
    json!({
        "kind": "equiv-certificate",
        "left": side_to_value(&c.left),
        "right": side_to_value(&c.right),
        "iso": c.iso.as_ref().map(|r| format::certificate_to_value(&SimCertificate::new(r.clone(), SimMode::TwoSided))),
    })
}

pub fn equiv(file1: &Path, file2: &Path, certify: Option<&Path>) -> CResult<Outcome> {
    let left = Input::load(file1)?;
    let right = Input::load(file2)?;
    let mismatch = || right.err(format!("cannot compare with a `{}` ({})", left.kind(), left.path.display()));
    if certify.is_some() && !matches!(left.doc, Document::Diagram(_)) {
        return Err(left.err("certificate chains are produced for diagrams only"));
    }
    let verdict = match (&left.doc, &right.doc) {
        (Document::Nfa(_) | Document::Dfa(_), Document::Nfa(_) | Document::Dfa(_)) => {
            let as_nfa = |i: &Input| match &i.doc {
                Document::Nfa(n) => n.clone(),
                Document::Dfa(d) => d.as_nfa().clone(),
                _ => unreachable!(),
            };
            nfa_verdict(&left, &right, &as_nfa(&left), &as_nfa(&right))?
        }
        (Document::Transducer(t1), Document::Transducer(t2)) => {
            if t1.input() != t2.input() || t1.output() != t2.output() {
                return Err(mismatch());
            }
            let n1 = left.check(Nfa::from_transducer(&t1.to_automaton()))?;
            let n2 = right.check(Nfa::from_transducer(&t2.to_automaton()))?;
            nfa_verdict(&left, &right, &n1, &n2)?
        }
        (Document::Diagram(d1), Document::Diagram(d2)) => {
            let (equal, cert) = right.check(diagrams_equiv(d1, d2))?;
            if let Some(path) = certify {
                write_json(path, &equiv_certificate_to_value(&cert))?;
            }
            let detail = json!({
                "minimal_states": [cert.left.min.num_states(), cert.right.min.num_states()],
                "iso": cert.iso.as_ref().map(rendered_pairs),
                "certificates_valid": right.check(cert.is_valid())?,
            });
            Verdict::equality(equal, detail)
        }
        (Document::Presentation { presentation: p1, .. }, Document::Presentation { presentation: p2, .. }) => {
            if p1.alphabet() != p2.alphabet() {
                return Err(mismatch());
            }
            let equal = right.check(presentations_equiv(p1, p2))?;
            let detail = json!({
                "canonical_states": [canonical_form(p1).num_states(), canonical_form(p2).num_states()],
            });
            Verdict::equality(equal, detail)
        }
        (Document::ZTransducer(z1), Document::ZTransducer(z2)) => {
            Verdict::equality(right.check(ztransducers_equiv(z1, z2))?, json!({}))
        }
        (Document::ZDiagram(d1), Document::ZDiagram(d2)) => {
            Verdict::equality(right.check(z_diagrams_equiv(d1, d2))?, json!({}))
        }
        (Document::Alphabet(_) | Document::Relation(_) | Document::Certificate(_), _) => {
            return Err(left.unsupported("equiv"))
        }
        _ => return Err(mismatch()),
    };
    Ok(Outcome::Verdict(verdict))
}

pub fn determinize_cmd(file: &Path, certify: Option<&Path>) -> CResult<Outcome> {
    let input = Input::load(file)?;
    let (doc, cert) = match &input.doc {
        Document::Nfa(n) => {
            let (d, cert) = certificate_for_determinization(n);
            (format::nfa_to_value("dfa", d.as_nfa()), cert)
        }
        Document::Dfa(d) => {
            let (d, cert) = certificate_for_determinization(d.as_nfa());
            (format::nfa_to_value("dfa", d.as_nfa()), cert)
        }
        Document::Presentation { presentation, .. } => {
            let (rp, cert) = input.check(determinize_presentation(presentation))?;
            (format::presentation_to_value(&rp.presentation, Some(rp.root)), cert)
        }
        _ => return Err(input.unsupported("determinize")),
    };
    if let Some(path) = certify {
        write_json(path, &format::certificate_to_value(&cert))?;
    }
    Ok(Outcome::Json(doc))
}

pub fn minimize_cmd(file: &Path, certify: Option<&Path>) -> CResult<Outcome> {
    let input = Input::load(file)?;
    let dfa = |d: &Dfa| -> CResult<(Value, Option<SimCertificate>)> {
        if certify.is_some() {
            let (m, cert) = input.check(certificate_for_minimization(d))?;
            Ok((format::nfa_to_value("dfa", m.as_nfa()), Some(cert)))
        } else {
            Ok((format::nfa_to_value("dfa", minimize(d).0.as_nfa()), None))
        }
    };
    let (doc, cert) = match &input.doc {
        Document::Dfa(d) => dfa(d)?,
        Document::Nfa(n) => {
            let d = Dfa::try_from_nfa(n.clone())
                .map_err(|_| input.err("not deterministic; run `determinize` first"))?;
            dfa(&d)?
        }
        Document::Presentation { presentation, root } => {
            let root = root.ok_or_else(|| input.err("a rooted presentation is required; run `determinize` first"))?;
            let rp = input.check(RootedPresentation::new(presentation.clone(), root))?;
            let (m, cert) = input.check(minimize_presentation(&rp))?;
            (format::presentation_to_value(&m.presentation, Some(m.root)), Some(cert))
        }
        _ => return Err(input.unsupported("minimize")),
    };
    if let (Some(path), Some(cert)) = (certify, cert) {
        write_json(path, &format::certificate_to_value(&cert))?;
    }
    Ok(Outcome::Json(doc))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum PruneMode {
    Fwd,
    Bwd,
    Full,
}

pub fn prune_cmd(file: &Path, mode: PruneMode) -> CResult<Outcome> {
    let input = Input::load(file)?;
    let (p, _) = input.presentation("prune")?;
    let pruned = match mode {
        PruneMode::Fwd => forward_prune(p),
        PruneMode::Bwd => backward_prune(p),
        PruneMode::Full => prune(p),
    };
    Ok(Outcome::Json(format::presentation_to_value(&pruned, None)))
}

/// The presentation with no states, standing for the empty subshift.
pub fn empty_presentation(alphabet: &Obj) -> Presentation {
    let states = Obj::wire(Alphabet::new("∅", Vec::<String>::new()).expect("no symbols, no duplicates"));
    Presentation::new(alphabet.clone(), states, []).expect("no transitions to check")
}

pub fn canonical(file: &Path) -> CResult<Outcome> {
    let input = Input::load(file)?;
    let (p, _) = input.presentation("canonical")?;
    Ok(Outcome::Json(match canonical_form(p) {
        CanonicalForm::Empty => format::presentation_to_value(&empty_presentation(p.alphabet()), None),
        CanonicalForm::Rooted(rp) => format::presentation_to_value(&rp.presentation, Some(rp.root)),
    }))
}

pub fn check_sim(m1: &Path, m2: &Path, cert: &Path, mode: Option<SimMode>, infinite: bool) -> CResult<Outcome> {
    let i1 = Input::load(m1)?;
    let i2 = Input::load(m2)?;
    let ic = Input::load(cert)?;
    let Document::Certificate(c) = &ic.doc else {
        return Err(ic.err("expected a certificate"));
    };
    let c = SimCertificate::new(c.s.clone(), mode.unwrap_or(c.mode));
    let report = if infinite {
        let z1 = i1.infinite_machine().ok_or_else(|| i1.unsupported("check-sim --infinite"))?;
        let z2 = i2.infinite_machine().ok_or_else(|| i2.unsupported("check-sim --infinite"))?;
        ic.check(check_inf(&z1, &z2, &c))?
    } else {
        let t1 = i1.finite_machine().ok_or_else(|| i1.unsupported("check-sim"))?;
        let t2 = i2.finite_machine().ok_or_else(|| i2.unsupported("check-sim"))?;
        ic.check(check_fin(&t1, &t2, &c))?
    };
    Ok(Outcome::Verdict(Verdict::check(report.passed(), report_to_value(&report))))
}

pub fn normalize(file: &Path) -> CResult<Outcome> {
    let input = Input::load(file)?;
    Ok(Outcome::Json(match &input.doc {
        Document::Diagram(d) => format::transducer_to_value(&input.check(normal_form(d))?),
        Document::ZDiagram(d) => format::ztransducer_to_value(&input.check(z_normal_form(d))?),
        _ => return Err(input.unsupported("normalize")),
    }))
}

pub fn factors(file: &Path, max_len: usize) -> CResult<Outcome> {
    let input = Input::load(file)?;
    let (p, _) = input.presentation("factors")?;
    let mut words: Vec<_> = factors_upto(p, max_len).into_iter().collect();
    words.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let words: Vec<Value> = words.iter().map(|w| format::word_to_value(p.alphabet(), w)).collect();
    Ok(Outcome::Json(json!({
        "alphabet": format::obj_to_value(p.alphabet()),
        "max_len": max_len,
        "words": words,
    })))
}

/// Letters are given by their rendered names: the bare symbol for a
/// one-wire alphabet, `(x,y)` for a bundle.
pub fn periodic(file: &Path, word: &[String]) -> CResult<Outcome> {
    let input = Input::load(file)?;
    let (p, _) = input.presentation("periodic")?;
    let w = word
        .iter()
        .map(|s| p.alphabet().parse_rendered(s))
        .collect::<reltrans::Result<Vec<_>>>();
    let w = input.check(w)?;
    let member = input.check(periodic_membership(p, &w))?;
    Ok(Outcome::Verdict(Verdict::check(
        member,
        json!({ "word": format::word_to_value(p.alphabet(), &w), "member": member }),
    )))
}

pub fn export_dot(file: &Path) -> CResult<Outcome> {
    let input = Input::load(file)?;
    Ok(Outcome::Text(match &input.doc {
        Document::Nfa(n) => dot::nfa_to_dot(n),
        Document::Dfa(d) => dot::nfa_to_dot(d.as_nfa()),
        Document::Transducer(t) => dot::transducer_to_dot(t),
        Document::ZTransducer(z) => dot::transducer_to_dot(&z.to_transducer()),
        Document::Presentation { presentation, root } => dot::presentation_to_dot(presentation, *root),
        Document::Diagram(d) => dot::term_to_dot(d),
        Document::ZDiagram(d) => dot::term_to_dot(d),
        _ => return Err(input.unsupported("export-dot")),
    }))
}

/// Re-serializes a file in canonical form.
pub fn fmt(file: &Path) -> CResult<Outcome> {
    let input = Input::load(file)?;
    Ok(Outcome::Json(format::to_value(&input.doc)))
}

