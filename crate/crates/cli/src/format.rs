//! The JSON interchange format.
//!
//! Every file is an object with a `"kind"` tag. Objects (wire bundles) are
//! arrays of `{"name", "symbols"}`; a tuple is a bare symbol when the bundle
//! has one wire and an array of symbols otherwise (`[]` for the unit); a word
//! is an array of tuples. Output is canonical: keys sorted, pairs and
//! transitions in index order.

use std::collections::BTreeSet;
use std::path::Path;

use reltrans::diagram::{FeedbackLabels, Labels, Term};
use reltrans::simulation::{SimCertificate, SimMode};
use reltrans::transducer::{Edge, Word};
use reltrans::{Alphabet, Dfa, Nfa, Obj, Presentation, Rel, Transducer, ZTransducer};
use serde_json::{json, Map, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("cannot read file: {0}")]
    Io(#[from] std::io::Error),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Schema(String),
    #[error(transparent)]
    Core(#[from] reltrans::Error),
}

pub type FResult<T> = Result<T, FormatError>;

fn schema<T>(msg: impl Into<String>) -> FResult<T> {
    Err(FormatError::Schema(msg.into()))
}

/// One parsed file.
#[derive(Clone, Debug, PartialEq)]
pub enum Document {
    Alphabet(Alphabet),
    Relation(Rel),
    Transducer(Transducer),
    Nfa(Nfa),
    Dfa(Dfa),
    Presentation { presentation: Presentation, root: Option<usize> },
    ZTransducer(ZTransducer),
    Diagram(Term<Labels>),
    ZDiagram(Term<()>),
    Certificate(SimCertificate),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Alphabet(_) => "alphabet",
            Document::Relation(_) => "relation",
            Document::Transducer(_) => "transducer",
            Document::Nfa(_) => "nfa",
            Document::Dfa(_) => "dfa",
            Document::Presentation { .. } => "presentation",
            Document::ZTransducer(_) => "ztransducer",
            Document::Diagram(_) => "diagram",
            Document::ZDiagram(_) => "zdiagram",
            Document::Certificate(_) => "certificate",
        }
    }
}

fn field<'a>(v: &'a Value, key: &str) -> FResult<&'a Value> {
    v.get(key).ok_or_else(|| FormatError::Schema(format!("missing field `{key}`")))
}

fn array<'a>(v: &'a Value, what: &str) -> FResult<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| FormatError::Schema(format!("`{what}` must be an array")))
}

fn string<'a>(v: &'a Value, what: &str) -> FResult<&'a str> {
    v.as_str().ok_or_else(|| FormatError::Schema(format!("`{what}` must be a string")))
}

pub fn alphabet_to_value(a: &Alphabet) -> Value {
    json!({ "name": a.name(), "symbols": a.symbols() })
}

pub fn parse_alphabet(v: &Value) -> FResult<Alphabet> {
    let name = string(field(v, "name")?, "name")?;
    let symbols = array(field(v, "symbols")?, "symbols")?
        .iter()
        .map(|s| string(s, "symbol").map(str::to_string))
        .collect::<FResult<Vec<_>>>()?;
    Ok(Alphabet::new(name, symbols)?)
}

pub fn obj_to_value(o: &Obj) -> Value {
    Value::Array(o.wires().iter().map(alphabet_to_value).collect())
}

pub fn parse_obj(v: &Value) -> FResult<Obj> {
    let wires = array(v, "object")?.iter().map(parse_alphabet).collect::<FResult<Vec<_>>>()?;
    Ok(Obj::new(wires))
}

pub fn tuple_to_value(o: &Obj, idx: usize) -> Value {
    let syms = o.symbols_of(idx);
    if syms.len() == 1 {
        Value::String(syms[0].to_string())
    } else {
        Value::Array(syms.into_iter().map(|s| Value::String(s.to_string())).collect())
    }
}

pub fn parse_tuple(o: &Obj, v: &Value) -> FResult<usize> {
    match v {
        Value::String(s) => Ok(o.index_of_symbols(&[s.as_str()])?),
        Value::Array(items) => {
            let syms = items.iter().map(|s| string(s, "symbol")).collect::<FResult<Vec<_>>>()?;
            Ok(o.index_of_symbols(&syms)?)
        }
        _ => schema(format!("a tuple of `{o}` must be a string or an array")),
    }
}

fn set_to_value(o: &Obj, set: &BTreeSet<usize>) -> Value {
    Value::Array(set.iter().map(|&q| tuple_to_value(o, q)).collect())
}

fn parse_set(o: &Obj, v: &Value) -> FResult<BTreeSet<usize>> {
    array(v, "state set")?.iter().map(|x| parse_tuple(o, x)).collect()
}

pub fn word_to_value(o: &Obj, w: &[usize]) -> Value {
    Value::Array(w.iter().map(|&a| tuple_to_value(o, a)).collect())
}

pub fn parse_word(o: &Obj, v: &Value) -> FResult<Word> {
    array(v, "word")?.iter().map(|x| parse_tuple(o, x)).collect()
}

/// The body of a relation, without a kind tag.
pub fn rel_to_value(r: &Rel) -> Value {
    let pairs: Vec<Value> = r
        .pairs()
        .iter()
        .map(|&(x, y)| json!([tuple_to_value(r.dom(), x), tuple_to_value(r.cod(), y)]))
        .collect();
    json!({ "dom": obj_to_value(r.dom()), "cod": obj_to_value(r.cod()), "pairs": pairs })
}

pub fn parse_rel(v: &Value) -> FResult<Rel> {
    let dom = parse_obj(field(v, "dom")?)?;
    let cod = parse_obj(field(v, "cod")?)?;
    let mut pairs = Vec::new();
    for p in array(field(v, "pairs")?, "pairs")? {
        match p.as_array().map(Vec::as_slice) {
            Some([x, y]) => pairs.push((parse_tuple(&dom, x)?, parse_tuple(&cod, y)?)),
            _ => return schema("each pair must be a two-element array"),
        }
    }
    Ok(Rel::new(dom, cod, pairs)?)
}

fn edges_to_value(input: &Obj, output: &Obj, states: &Obj, edges: impl Iterator<Item = Edge>) -> Value {
    Value::Array(
        edges
            .map(|e| {
                json!({
                    "from": tuple_to_value(states, e.from),
                    "input": tuple_to_value(input, e.input),
                    "output": tuple_to_value(output, e.output),
                    "to": tuple_to_value(states, e.to),
                })
            })
            .collect(),
    )
}

fn parse_edges(input: &Obj, output: &Obj, states: &Obj, v: &Value) -> FResult<Vec<Edge>> {
    array(v, "transitions")?
        .iter()
        .map(|e| {
            Ok(Edge {
                from: parse_tuple(states, field(e, "from")?)?,
                input: parse_tuple(input, field(e, "input")?)?,
                output: parse_tuple(output, field(e, "output")?)?,
                to: parse_tuple(states, field(e, "to")?)?,
            })
        })
        .collect()
}

fn letter_edges_to_value(alphabet: &Obj, states: &Obj, trans: &BTreeSet<(usize, usize, usize)>) -> Value {
    Value::Array(
        trans
            .iter()
            .map(|&(p, a, q)| {
                json!({
                    "from": tuple_to_value(states, p),
                    "letter": tuple_to_value(alphabet, a),
                    "to": tuple_to_value(states, q),
                })
            })
            .collect(),
    )
}

fn parse_letter_edges(alphabet: &Obj, states: &Obj, v: &Value) -> FResult<Vec<(usize, usize, usize)>> {
    array(v, "transitions")?
        .iter()
        .map(|e| {
            Ok((
                parse_tuple(states, field(e, "from")?)?,
                parse_tuple(alphabet, field(e, "letter")?)?,
                parse_tuple(states, field(e, "to")?)?,
            ))
        })
        .collect()
}

fn with_kind(kind: &str, body: Value) -> Value {
    let mut map = match body {
        Value::Object(m) => m,
        _ => Map::new(),
    };
    map.insert("kind".into(), Value::String(kind.into()));
    Value::Object(map)
}

pub fn transducer_to_value(t: &Transducer) -> Value {
    with_kind(
        "transducer",
        json!({
            "input": obj_to_value(t.input()),
            "output": obj_to_value(t.output()),
            "states": obj_to_value(t.states()),
            "transitions": edges_to_value(t.input(), t.output(), t.states(), t.edges()),
            "initial": set_to_value(t.states(), t.initial()),
            "final": set_to_value(t.states(), t.fin()),
        }),
    )
}

pub fn nfa_to_value(kind: &str, n: &Nfa) -> Value {
    with_kind(
        kind,
        json!({
            "alphabet": obj_to_value(n.alphabet()),
            "states": obj_to_value(n.states()),
            "transitions": letter_edges_to_value(n.alphabet(), n.states(), n.trans()),
            "initial": set_to_value(n.states(), n.initial()),
            "final": set_to_value(n.states(), n.fin()),
        }),
    )
}

pub fn presentation_to_value(p: &Presentation, root: Option<usize>) -> Value {
    let mut body = json!({
        "alphabet": obj_to_value(p.alphabet()),
        "states": obj_to_value(p.states()),
        "transitions": letter_edges_to_value(p.alphabet(), p.states(), p.trans()),
    });
    if let Some(r) = root {
        body["root"] = tuple_to_value(p.states(), r);
    }
    with_kind("presentation", body)
}

pub fn ztransducer_to_value(z: &ZTransducer) -> Value {
    with_kind(
        "ztransducer",
        json!({
            "input": obj_to_value(z.input()),
            "output": obj_to_value(z.output()),
            "states": obj_to_value(z.states()),
            "transitions": edges_to_value(z.input(), z.output(), z.states(), z.edges().into_iter()),
        }),
    )
}

pub fn certificate_to_value(c: &SimCertificate) -> Value {
    with_kind("certificate", json!({ "mode": c.mode.name(), "relation": rel_to_value(&c.s) }))
}

/// Serializes a diagram term; feedback labels are written by `labels`.
pub fn term_to_value<L: FeedbackLabels>(t: &Term<L>, labels: &dyn Fn(&Obj, &L) -> Map<String, Value>) -> Value {
    match t {
        Term::Box(r) => json!({ "box": rel_to_value(r) }),
        Term::Id(o) => json!({ "id": obj_to_value(o) }),
        Term::Swap(a, b) => json!({ "swap": [obj_to_value(a), obj_to_value(b)] }),
        Term::Seq(a, b) => json!({ "seq": [term_to_value(a, labels), term_to_value(b, labels)] }),
        Term::Par(a, b) => json!({ "par": [term_to_value(a, labels), term_to_value(b, labels)] }),
        Term::Feedback { state, labels: l, body } => {
            let mut m = labels(state, l);
            m.insert("state".into(), obj_to_value(state));
            m.insert("body".into(), term_to_value(body, labels));
            json!({ "feedback": Value::Object(m) })
        }
    }
}

fn diagram_labels(state: &Obj, l: &Labels) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("initial".into(), set_to_value(state, &l.initial));
    m.insert("final".into(), set_to_value(state, &l.fin));
    m
}

pub fn diagram_to_value(d: &Term<Labels>) -> Value {
    with_kind("diagram", json!({ "term": term_to_value(d, &diagram_labels) }))
}

pub fn zdiagram_to_value(d: &Term<()>) -> Value {
    with_kind("zdiagram", json!({ "term": term_to_value(d, &|_, _| Map::new()) }))
}

fn parse_term<L: FeedbackLabels>(v: &Value, labels: &dyn Fn(&Obj, &Value) -> FResult<L>) -> FResult<Term<L>> {
    let Some(obj) = v.as_object().filter(|m| m.len() == 1) else {
        return schema("a term is an object with exactly one constructor key");
    };
    let (tag, body) = obj.iter().next().expect("one entry");
    let pair = |what: &str| -> FResult<(&Value, &Value)> {
        match body.as_array().map(Vec::as_slice) {
            Some([a, b]) => Ok((a, b)),
            _ => schema(format!("`{what}` takes a two-element array")),
        }
    };
    Ok(match tag.as_str() {
        "box" => Term::Box(parse_rel(body)?),
        "id" => Term::Id(parse_obj(body)?),
        "swap" => {
            let (a, b) = pair("swap")?;
            Term::Swap(parse_obj(a)?, parse_obj(b)?)
        }
        "seq" => {
            let (a, b) = pair("seq")?;
            parse_term(a, labels)?.seq(parse_term(b, labels)?)
        }
        "par" => {
            let (a, b) = pair("par")?;
            parse_term(a, labels)?.par(parse_term(b, labels)?)
        }
        "feedback" => {
            let state = parse_obj(field(body, "state")?)?;
            let l = labels(&state, body)?;
            Term::feedback(state, l, parse_term(field(body, "body")?, labels)?)
        }
        other => return schema(format!("unknown term constructor `{other}`")),
    })
}

fn parse_diagram_labels(state: &Obj, v: &Value) -> FResult<Labels> {
    Ok(Labels {
        initial: parse_set(state, field(v, "initial")?)?,
        fin: parse_set(state, field(v, "final")?)?,
    })
}

fn parse_zdiagram_labels(_: &Obj, v: &Value) -> FResult<()> {
    if v.get("initial").is_some() || v.get("final").is_some() {
        return schema("feedback on bi-infinite words carries no initial or final states");
    }
    Ok(())
}

pub fn to_value(doc: &Document) -> Value {
    match doc {
        Document::Alphabet(a) => with_kind("alphabet", alphabet_to_value(a)),
        Document::Relation(r) => with_kind("relation", rel_to_value(r)),
        Document::Transducer(t) => transducer_to_value(t),
        Document::Nfa(n) => nfa_to_value("nfa", n),
        Document::Dfa(d) => nfa_to_value("dfa", d.as_nfa()),
        Document::Presentation { presentation, root } => presentation_to_value(presentation, *root),
        Document::ZTransducer(z) => ztransducer_to_value(z),
        Document::Diagram(d) => diagram_to_value(d),
        Document::ZDiagram(d) => zdiagram_to_value(d),
        Document::Certificate(c) => certificate_to_value(c),
    }
}

pub fn parse_document(v: &Value) -> FResult<Document> {
    let kind = string(field(v, "kind")?, "kind")?;
    Ok(match kind {
        "alphabet" => Document::Alphabet(parse_alphabet(v)?),
        "relation" => Document::Relation(parse_rel(v)?),
        "transducer" => {
            let input = parse_obj(field(v, "input")?)?;
            let output = parse_obj(field(v, "output")?)?;
            let states = parse_obj(field(v, "states")?)?;
            let edges = parse_edges(&input, &output, &states, field(v, "transitions")?)?;
            let initial = parse_set(&states, field(v, "initial")?)?;
            let fin = parse_set(&states, field(v, "final")?)?;
            Document::Transducer(Transducer::from_edges(input, output, states, edges, initial, fin)?)
        }
        "nfa" | "dfa" => {
            let alphabet = parse_obj(field(v, "alphabet")?)?;
            let states = parse_obj(field(v, "states")?)?;
            let trans = parse_letter_edges(&alphabet, &states, field(v, "transitions")?)?;
            let initial = parse_set(&states, field(v, "initial")?)?;
            let fin = parse_set(&states, field(v, "final")?)?;
            let n = Nfa::new(alphabet, states, trans, initial, fin)?;
            if kind == "dfa" {
                Document::Dfa(Dfa::try_from_nfa(n)?)
            } else {
                Document::Nfa(n)
            }
        }
        "presentation" => {
            let alphabet = parse_obj(field(v, "alphabet")?)?;
            let states = parse_obj(field(v, "states")?)?;
            let trans = parse_letter_edges(&alphabet, &states, field(v, "transitions")?)?;
            let root = v.get("root").map(|r| parse_tuple(&states, r)).transpose()?;
            Document::Presentation {
                presentation: Presentation::new(alphabet, states, trans)?,
                root,
            }
        }
        "ztransducer" => {
            let input = parse_obj(field(v, "input")?)?;
            let output = parse_obj(field(v, "output")?)?;
            let states = parse_obj(field(v, "states")?)?;
            let edges = parse_edges(&input, &output, &states, field(v, "transitions")?)?;
            Document::ZTransducer(ZTransducer::from_edges(input, output, states, edges)?)
        }
        "diagram" => {
            let d = parse_term(field(v, "term")?, &parse_diagram_labels)?;
            d.type_of()?;
            Document::Diagram(d)
        }
        "zdiagram" => {
            let d = parse_term(field(v, "term")?, &parse_zdiagram_labels)?;
            d.type_of()?;
            Document::ZDiagram(d)
        }
        "certificate" => {
            let mode = string(field(v, "mode")?, "mode")?;
            let Some(mode) = SimMode::parse(mode) else {
                return schema(format!("unknown mode `{mode}` (two-sided, backward, forward)"));
            };
            Document::Certificate(SimCertificate::new(parse_rel(field(v, "relation")?)?, mode))
        }
        other => return schema(format!("unknown kind `{other}`")),
    })
}

/// Canonical text: pretty-printed with sorted keys, newline-terminated.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

pub fn read_value(path: &Path) -> FResult<Value> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

pub fn read_document(path: &Path) -> FResult<Document> {
    parse_document(&read_value(path)?)
}
