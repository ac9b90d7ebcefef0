//! Classify the evolution step between two versions of a behavior model.
//!
//! Run with: `cargo run --example classify_evolution`

use std::collections::BTreeSet;

use arm_trace::arm_relations::classify_evolution;
use arm_trace::trace_lang::{Alphabet, StateBudget, Trace, TraceAutomaton};

fn finite_language(traces: &[&[&str]], alphabet: &Alphabet) -> TraceAutomaton {
    let set: BTreeSet<Trace> = traces
        .iter()
        .map(|t| Trace::from_names(t, alphabet).expect("trace over alphabet"))
        .collect();
    TraceAutomaton::from_traces(&set, alphabet.clone()).expect("valid trace set")
}

fn main() -> Result<(), arm_trace::Error> {
    let budget = StateBudget::default();
    let alphabet = Alphabet::from_names(["request", "grant", "deny"])?;

    let v1 = finite_language(
        &[&["request", "grant"], &["request", "deny"]],
        &alphabet,
    );
    // v2 drops the deny path and adds a retry loop the old model never had
    let v2 = finite_language(
        &[&["request", "grant"], &["request", "request", "grant"]],
        &alphabet,
    );

    let report = classify_evolution(&v1, &v2, budget)?;
    println!("canonical class: {}", report.canonical);
    println!("  abstraction holds:      {}", report.abstraction_holds);
    println!("  refinement holds:       {}", report.refinement_holds);
    println!("  total change holds:     {}", report.total_change_holds);
    println!("  strict evolution holds: {}", report.strict_evolution_holds);
    if let Some(w) = &report.evidence.prev_only {
        println!("  dropped behavior: {}", w.trace.render(&alphabet));
    }
    if let Some(w) = &report.evidence.next_only {
        println!("  new behavior:     {}", w.trace.render(&alphabet));
    }
    if let Some(w) = &report.evidence.shared {
        println!("  kept behavior:    {}", w.trace.render(&alphabet));
    }
    Ok(())
}
