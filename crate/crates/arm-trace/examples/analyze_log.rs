//! Extract emergent behavior from a runtime trace log and attribute each
//! emergent trace to the development phase where its gap originated.
//!
//! Run with: `cargo run --example analyze_log`

use std::collections::BTreeSet;

use arm_trace::arm_relations::ModelChain;
use arm_trace::emergence::{extract_emergent, parse_log};
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

    // the worked chain: rm = {a, ab, b}, dm = {a, ab}, im = {ab}
    let rm = finite_language(&[&["a"], &["a", "b"], &["b"]], &alphabet);
    let dm = finite_language(&[&["a"], &["a", "b"]], &alphabet);
    let im = finite_language(&[&["a", "b"]], &alphabet);
    let chain = ModelChain::new(rm, dm, im)?;

    let log = parse_log("a b\nb a\nb\na\n", &alphabet, "observed.log")?;
    let report = extract_emergent(&log, &chain, budget)?;

    println!("observed traces: {}", report.observed_count);
    println!("guarantee violated: {}", report.guarantee_violated);
    println!("per-trace verdicts:");
    for (trace, (v, origin)) in &report.per_trace {
        println!(
            "  {:<6} rm:{} dm:{} im:{}  {}",
            trace.render(&alphabet),
            v.in_rbt as u8,
            v.in_dbt as u8,
            v.in_ibt as u8,
            origin
        );
    }
    println!("case classification: {}", report.case.label);
    Ok(())
}
