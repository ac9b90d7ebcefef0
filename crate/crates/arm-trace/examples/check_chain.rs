//! Verify that design and implementation models refine their predecessors.
//!
//! Run with: `cargo run --example check_chain`

use arm_trace::arm_relations::{check_chain, ModelChain};
use arm_trace::trace_lang::{parse_automaton, StateBudget};

fn main() -> Result<(), arm_trace::Error> {
    let budget = StateBudget::default();

    let rm = parse_automaton(
        "alphabet: open, read, write, close
         states: idle, active
         initial: idle
         accepting: idle
         idle -open-> active
         active -read-> active
         active -write-> active
         active -close-> idle",
    )?;

    // design drops the write capability
    let dm = parse_automaton(
        "alphabet: open, read, write, close
         states: idle, active
         initial: idle
         accepting: idle
         idle -open-> active
         active -read-> active
         active -close-> idle",
    )?;

    // implementation sneaks a write back in: a refinement violation
    let im = parse_automaton(
        "alphabet: open, read, write, close
         states: idle, active
         initial: idle
         accepting: idle
         idle -open-> active
         active -read-> active
         active -write-> active
         active -close-> idle",
    )?;

    let chain = ModelChain::new(rm, dm, im)?;
    let report = check_chain(&chain, budget)?;

    println!(
        "refinement chain: {}",
        if report.chain_holds { "holds" } else { "VIOLATED" }
    );
    match report.dm_refines_rm.witness() {
        None => println!("  design refines requirements"),
        Some(w) => println!(
            "  design adds unspecified behavior: {}",
            w.trace.render(chain.alphabet())
        ),
    }
    match report.im_refines_dm.witness() {
        None => println!("  implementation refines design"),
        Some(w) => println!(
            "  implementation adds unspecified behavior: {}",
            w.trace.render(chain.alphabet())
        ),
    }
    Ok(())
}
