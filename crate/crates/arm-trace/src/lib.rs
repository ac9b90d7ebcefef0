//! Analysis of behavior-trace languages across development phases.
//!
//! A phase model (requirements, design, implementation) is a finite automaton
//! over an event alphabet; its semantics is the accepted trace language.
//! The crate classifies evolution steps between models, verifies refinement
//! chains, extracts emergent behavior from runtime trace logs, attributes each
//! emergent trace to the phase where it originated, and decomposes models into
//! their concrete and extra parts.
//!
//! Entry points:
//! * [`trace_lang`] — automata, parsing, and the language-level decision
//!   procedures everything else is built on.
//! * [`arm_relations`] — evolution-step classification and chain checking.
//! * [`emergence`] — emergent-trace extraction, case analysis, origin
//!   attribution, and the extended decomposition.
//! * [`scenario`] — deterministic generation of synthetic chains and logs
//!   with injected defects for ground-truth experiments.
//! * [`report`] — machine- and human-readable report rendering.

pub mod arm_relations;
pub mod emergence;
pub mod error;
pub mod report;
pub mod scenario;
pub mod trace_lang;

pub use error::Error;
pub use trace_lang::{Alphabet, EventSymbol, StateBudget, Trace, TraceAutomaton, Witness};
