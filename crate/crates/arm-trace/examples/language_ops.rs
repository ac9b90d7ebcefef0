//! Parse automata from text, combine their languages, and inspect witnesses.
//!
//! Run with: `cargo run --example language_ops`

use arm_trace::trace_lang::{
    parse_automaton, CombineKind, Emptiness, StateBudget, Trace, TraceAutomaton,
};

fn main() -> Result<(), arm_trace::Error> {
    let budget = StateBudget::default();

    // (ab)* — even-length alternating runs
    let repeating = parse_automaton(
        "alphabet: a, b
         states: q0, q1
         initial: q0
         accepting: q0
         q0 -a-> q1
         q1 -b-> q0",
    )?;

    // anything ending in b
    let ends_in_b = parse_automaton(
        "alphabet: a, b
         states: q0, q1
         initial: q0
         accepting: q1
         q0 -a-> q0
         q0 -b-> q0
         q0 -b-> q1",
    )?;

    let alphabet = repeating.alphabet().clone();
    let trace = Trace::from_names(&["a", "b", "a", "b"], &alphabet)?;
    println!("(ab)* accepts 'a b a b': {}", repeating.accepts(&trace)?);

    let shared = TraceAutomaton::combine(CombineKind::Intersection, &repeating, &ends_in_b, budget)?;
    println!("\ntraces in both languages, up to length 6:");
    for t in shared.enumerate(6, budget)? {
        println!("  {}", t.render(&alphabet));
    }

    let only_repeating =
        TraceAutomaton::combine(CombineKind::Difference, &repeating, &ends_in_b, budget)?;
    match only_repeating.is_empty(budget)? {
        Emptiness::Empty => println!("\n(ab)* is contained in 'ends in b'"),
        Emptiness::NonEmpty(w) => println!(
            "\nshortest trace in (ab)* but not ending in b: {}",
            w.trace.render(&alphabet)
        ),
    }

    println!("\ncanonical form of the intersection:");
    print!("{}", shared.canonical_text(budget)?);
    Ok(())
}
