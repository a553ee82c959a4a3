//! Relational finite-state transducers on finite and bi-infinite words.
//!
//! The crate is organised bottom-up:
//!
//! - [`alphabet`] and [`rel`]: finite sets, wire bundles, and typed relations;
//! - [`transducer`]: transducers, behaviors, the finite shift, composition;
//! - [`automata`]: determinization, minimization, factor and pruned languages;
//! - [`sofic`]: presentations of sofic subshifts and their canonical forms;
//! - [`simulation`]: checking simulation certificates;
//! - [`diagram`]: string-diagram terms with feedback, normal forms, equivalence;
//! - [`random`], [`batch`], [`dot`]: seeded generators, batch evaluation, Graphviz.

pub mod alphabet;
pub mod automata;
pub mod batch;
pub mod diagram;
pub mod dot;
pub mod error;
pub mod graph;
pub mod par;
pub mod random;
pub mod rel;
pub mod simulation;
pub mod sofic;
pub mod transducer;

pub use alphabet::{Alphabet, Obj};
pub use automata::{Dfa, Nfa};
pub use diagram::{Diagram, Labels, Term, ZDiagram};
pub use simulation::{Condition, SimCertificate, SimMode, SimReport, Witness};
pub use sofic::{CanonicalForm, Presentation, RootedPresentation, ZTransducer};
pub use error::{Error, Result};
pub use par::Execution;
pub use rel::Rel;
pub use transducer::{Transducer, UniformRelationSample, Word};
