//! Decompose design and implementation models into the part covered by the
//! previous phase (concrete) and the extra part, then bucket observed
//! emergent traces by originating phase.
//!
//! Run with: `cargo run --example decompose_extended`

use std::collections::BTreeSet;

use arm_trace::arm_relations::ModelChain;
use arm_trace::emergence::{decompose_extended, extract_emergent, TraceLog};
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
    let alphabet = Alphabet::from_names(["a", "b"])?;

    // the design model added behavior 'b' that requirements never specified
    let rm = finite_language(&[&["a"]], &alphabet);
    let dm = finite_language(&[&["a"], &["b"]], &alphabet);
    let im = finite_language(&[&["a"]], &alphabet);
    let chain = ModelChain::new(rm, dm, im)?;

    let log = TraceLog::new(
        vec![
            Trace::from_names(&["a"], &alphabet)?,
            Trace::from_names(&["b"], &alphabet)?,
            Trace::from_names(&["b", "a"], &alphabet)?,
        ],
        "field-observations",
    );
    let report = extract_emergent(&log, &chain, budget)?;
    let d = decompose_extended(&chain, &report, budget)?;

    let show = |label: &str, aut: &TraceAutomaton| {
        let traces = aut.enumerate(3, budget).expect("enumeration");
        let rendered: Vec<String> = traces.iter().map(|t| t.render(&alphabet)).collect();
        println!("{label}: {{{}}}", rendered.join(", "));
    };
    show("design concrete part (covered by requirements)", &d.concrete_d);
    show("design extra part (unspecified upstream)", &d.extra_d);
    show("implementation concrete part", &d.concrete_i);
    show("implementation extra part", &d.extra_i);

    let bucket = |set: &BTreeSet<Trace>| {
        set.iter()
            .map(|t| t.render(&alphabet))
            .collect::<Vec<_>>()
            .join(", ")
    };
    println!(
        "observed requirements-level gaps: {{{}}}",
        bucket(&d.uobt_r_observed)
    );
    println!(
        "observed design-level gaps:       {{{}}}",
        bucket(&d.uobt_d_observed)
    );
    Ok(())
}
