//! Property tests for the language operations, evolution relations, and
//! emergence analysis, all checked against the independent oracle in
//! `common`.

mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use arm_trace::arm_relations::{check_chain, classify_evolution, EvolutionClass, ModelChain};
use arm_trace::emergence::{
    decompose_extended, extract_emergent, localize_case, per_trace_origin, OriginPhase, TraceLog,
};
use arm_trace::scenario::SplitMix64;
use arm_trace::trace_lang::{
    CombineKind, Emptiness, StateBudget, Trace, TraceAutomaton,
};

use common::{
    abc, all_traces, oracle_disjoint, oracle_equivalent, oracle_includes, random_automaton,
    trace_of, Mask,
};

fn budget() -> StateBudget {
    StateBudget::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // membership in combine/complement results equals the boolean
    // combination of operand memberships, for every trace of length <= 8
    #[test]
    fn combine_and_complement_match_oracle(seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        let alphabet = abc();
        let a = random_automaton(&alphabet, 5, &mut rng);
        let b = random_automaton(&alphabet, 5, &mut rng);
        let union = TraceAutomaton::combine(CombineKind::Union, &a, &b, budget()).unwrap();
        let inter = TraceAutomaton::combine(CombineKind::Intersection, &a, &b, budget()).unwrap();
        let diff = TraceAutomaton::combine(CombineKind::Difference, &a, &b, budget()).unwrap();
        let comp = a.complement(budget()).unwrap();
        let (ma, mb) = (Mask::of(&a), Mask::of(&b));
        let (mu, mi, md, mc) = (Mask::of(&union), Mask::of(&inter), Mask::of(&diff), Mask::of(&comp));
        for t in all_traces(alphabet.len(), 8) {
            let (ia, ib) = (ma.simulate(&t), mb.simulate(&t));
            prop_assert_eq!(mu.simulate(&t), ia || ib);
            prop_assert_eq!(mi.simulate(&t), ia && ib);
            prop_assert_eq!(md.simulate(&t), ia && !ib);
            prop_assert_eq!(mc.simulate(&t), !ia);
        }
    }

    #[test]
    fn includes_agrees_with_oracle(seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        let alphabet = abc();
        let a = random_automaton(&alphabet, 5, &mut rng);
        let b = random_automaton(&alphabet, 5, &mut rng);
        let verdict = TraceAutomaton::includes(&a, &b, budget()).unwrap();
        match common::oracle_inclusion_counterexample(&a, &b) {
            None => prop_assert!(verdict.holds()),
            Some(expected) => {
                let w = verdict.witness().expect("oracle found a counterexample");
                prop_assert_eq!(w.trace.events(), &expected[..]);
            }
        }
    }

    // emptiness witness is accepted and no shorter accepted trace exists
    #[test]
    fn emptiness_witness_minimal(seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        let alphabet = abc();
        let a = random_automaton(&alphabet, 5, &mut rng);
        match a.is_empty(budget()).unwrap() {
            Emptiness::Empty => {
                let m = Mask::of(&a);
                for t in all_traces(alphabet.len(), 6) {
                    prop_assert!(!m.simulate(&t));
                }
            }
            Emptiness::NonEmpty(w) => {
                prop_assert!(a.accepts(&w.trace).unwrap());
                if w.trace.len() > 0 {
                    let shorter = a.enumerate(w.trace.len() - 1, budget()).unwrap();
                    prop_assert!(shorter.is_empty());
                }
            }
        }
    }

    // complement is an involution; difference equals intersection with the
    // complement
    #[test]
    fn complement_algebra(seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        let alphabet = abc();
        let a = random_automaton(&alphabet, 5, &mut rng);
        let b = random_automaton(&alphabet, 5, &mut rng);
        let cc = a.complement(budget()).unwrap().complement(budget()).unwrap();
        prop_assert!(TraceAutomaton::equivalent(&cc, &a, budget()).unwrap());
        let diff = TraceAutomaton::combine(CombineKind::Difference, &a, &b, budget()).unwrap();
        let not_b = b.complement(budget()).unwrap();
        let via_comp =
            TraceAutomaton::combine(CombineKind::Intersection, &a, &not_b, budget()).unwrap();
        prop_assert!(TraceAutomaton::equivalent(&diff, &via_comp, budget()).unwrap());
    }

    // minimization (the determinized form every operation produces) never
    // changes acceptance for random traces of length <= 8
    #[test]
    fn determinized_form_preserves_membership(seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        let alphabet = abc();
        let a = random_automaton(&alphabet, 5, &mut rng);
        let det = a.minimize(budget()).unwrap();
        let (ma, md) = (Mask::of(&a), Mask::of(&det));
        for _ in 0..64 {
            let len = rng.below(9);
            let t: Vec<usize> = (0..len).map(|_| rng.below(alphabet.len())).collect();
            prop_assert_eq!(ma.simulate(&t), md.simulate(&t));
        }
    }

    #[test]
    fn from_traces_enumerates_exactly(seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        let alphabet = abc();
        let mut set = BTreeSet::new();
        let count = rng.below(6);
        let mut max_len = 0;
        for _ in 0..count {
            let len = rng.below(5);
            max_len = max_len.max(len);
            set.insert(trace_of(
                &(0..len).map(|_| rng.below(alphabet.len())).collect::<Vec<_>>(),
            ));
        }
        let pta = TraceAutomaton::from_traces(&set, alphabet.clone()).unwrap();
        let mut expected: Vec<Trace> = set.iter().cloned().collect();
        expected.sort_by(|x, y| x.cmp_len_lex(y));
        prop_assert_eq!(pta.enumerate(max_len, budget()).unwrap(), expected);
    }

    // evolution flags literally match the oracle's set comparisons; exactly
    // one regime applies unless a language is empty
    #[test]
    fn evolution_flags_match_oracle(seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        let alphabet = abc();
        let prev = random_automaton(&alphabet, 5, &mut rng);
        let next = random_automaton(&alphabet, 5, &mut rng);
        let r = classify_evolution(&prev, &next, budget()).unwrap();
        prop_assert_eq!(r.abstraction_holds, oracle_includes(&next, &prev));
        prop_assert_eq!(r.refinement_holds, oracle_includes(&prev, &next));
        prop_assert_eq!(r.total_change_holds, oracle_disjoint(&prev, &next));
        prop_assert_eq!(
            r.strict_evolution_holds,
            !r.abstraction_holds && !r.refinement_holds && !r.total_change_holds
        );
        let prev_empty = prev.is_empty(budget()).unwrap().is_empty();
        let next_empty = next.is_empty(budget()).unwrap().is_empty();
        if !prev_empty && !next_empty {
            let inclusion_regime = r.abstraction_holds || r.refinement_holds;
            let regimes =
                inclusion_regime as u8 + r.total_change_holds as u8 + r.strict_evolution_holds as u8;
            prop_assert_eq!(regimes, 1);
        }
    }

    #[test]
    fn classify_self_is_equivalent(seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        let a = random_automaton(&abc(), 5, &mut rng);
        let r = classify_evolution(&a, &a, budget()).unwrap();
        prop_assert_eq!(r.canonical, EvolutionClass::Equivalent);
    }

    // refinement composes across the chain
    #[test]
    fn refinement_is_transitive(seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        let alphabet = abc();
        let a = random_automaton(&alphabet, 5, &mut rng);
        let b = random_automaton(&alphabet, 5, &mut rng);
        let c = random_automaton(&alphabet, 5, &mut rng);
        let ab = classify_evolution(&a, &b, budget()).unwrap();
        let bc = classify_evolution(&b, &c, budget()).unwrap();
        if ab.refinement_holds && bc.refinement_holds {
            prop_assert!(TraceAutomaton::includes(&a, &c, budget()).unwrap().holds());
        }
    }

    #[test]
    fn chain_check_equals_pairwise_refinement(seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        let alphabet = abc();
        let rm = random_automaton(&alphabet, 5, &mut rng);
        let dm = random_automaton(&alphabet, 5, &mut rng);
        let im = random_automaton(&alphabet, 5, &mut rng);
        let chain = ModelChain::new(rm.clone(), dm.clone(), im.clone()).unwrap();
        let report = check_chain(&chain, budget()).unwrap();
        let c1 = classify_evolution(&rm, &dm, budget()).unwrap();
        let c2 = classify_evolution(&dm, &im, budget()).unwrap();
        prop_assert_eq!(report.chain_holds, c1.refinement_holds && c2.refinement_holds);
        // failing steps carry a witness accepted by the evolved model only
        if let Some(w) = report.dm_refines_rm.witness() {
            prop_assert!(dm.accepts(&w.trace).unwrap());
            prop_assert!(!rm.accepts(&w.trace).unwrap());
        }
        if let Some(w) = report.im_refines_dm.witness() {
            prop_assert!(im.accepts(&w.trace).unwrap());
            prop_assert!(!dm.accepts(&w.trace).unwrap());
        }
    }

    // emergent traces are a subset of the deduplicated log; each observed
    // trace gets exactly one origin; emergent <=> origin is a gap
    #[test]
    fn emergence_partition(seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        let alphabet = abc();
        let rm = random_automaton(&alphabet, 5, &mut rng);
        let dm = random_automaton(&alphabet, 5, &mut rng);
        let im = random_automaton(&alphabet, 5, &mut rng);
        let chain = ModelChain::new(rm, dm, im).unwrap();
        let mut traces = Vec::new();
        for _ in 0..rng.below(10) {
            let len = rng.below(5);
            traces.push(trace_of(
                &(0..len).map(|_| rng.below(alphabet.len())).collect::<Vec<_>>(),
            ));
        }
        let log = TraceLog::new(traces, "prop");
        let report = extract_emergent(&log, &chain, budget()).unwrap();
        let dedup = log.trace_set();
        prop_assert!(report.emergent_traces.is_subset(&dedup));
        prop_assert_eq!(report.per_trace.len(), dedup.len());
        for (t, (v, origin)) in &report.per_trace {
            prop_assert_eq!(*origin, per_trace_origin(t, &chain).unwrap());
            prop_assert_eq!(v.in_ibt, *origin == OriginPhase::NotEmergent);
            prop_assert_eq!(
                report.emergent_traces.contains(t),
                *origin != OriginPhase::NotEmergent
            );
        }
        prop_assert_eq!(report.guarantee_violated, !report.emergent_traces.is_empty());
    }

    // union of concrete and extra parts reproduces each phase model, and the
    // design-level extra part is disjoint from the requirements
    #[test]
    fn decomposition_soundness(seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        let alphabet = abc();
        let rm = random_automaton(&alphabet, 5, &mut rng);
        let dm = random_automaton(&alphabet, 5, &mut rng);
        let im = random_automaton(&alphabet, 5, &mut rng);
        let chain = ModelChain::new(rm.clone(), dm.clone(), im.clone()).unwrap();
        let report = extract_emergent(&TraceLog::new(vec![], "p"), &chain, budget()).unwrap();
        let d = decompose_extended(&chain, &report, budget()).unwrap();
        let union_d =
            TraceAutomaton::combine(CombineKind::Union, &d.concrete_d, &d.extra_d, budget()).unwrap();
        prop_assert!(oracle_equivalent(&union_d, &dm));
        let union_i =
            TraceAutomaton::combine(CombineKind::Union, &d.concrete_i, &d.extra_i, budget()).unwrap();
        prop_assert!(oracle_equivalent(&union_i, &im));
        prop_assert!(oracle_disjoint(&d.extra_d, &rm));
    }

    // case classification depends only on the emergent language, not on the
    // automaton presenting it
    #[test]
    fn case_classification_is_semantic(seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        let alphabet = abc();
        let rm = random_automaton(&alphabet, 4, &mut rng);
        let dm = random_automaton(&alphabet, 4, &mut rng);
        let im = random_automaton(&alphabet, 4, &mut rng);
        let chain = ModelChain::new(rm, dm, im).unwrap();
        let mut set = BTreeSet::new();
        for _ in 0..rng.below(5) {
            let len = rng.below(4);
            set.insert(trace_of(
                &(0..len).map(|_| rng.below(alphabet.len())).collect::<Vec<_>>(),
            ));
        }
        let pta = TraceAutomaton::from_traces(&set, alphabet.clone()).unwrap();
        // a language-equivalent but structurally different presentation
        let doubled = TraceAutomaton::combine(CombineKind::Union, &pta, &pta, budget()).unwrap();
        let c1 = localize_case(&pta, &chain, budget()).unwrap();
        let c2 = localize_case(&doubled, &chain, budget()).unwrap();
        prop_assert_eq!(c1, c2);
    }
}
