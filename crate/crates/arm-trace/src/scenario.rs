//! Deterministic generation of synthetic model chains, observation logs, and
//! injected defects with known ground truth.
//!
//! All randomness comes from SplitMix64 seeded from the scenario config, so
//! a scenario is a pure function of its config and reproduces bit-identically
//! across runs and platforms. The generator identifier is recorded in every
//! scenario bundle's `meta.txt`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::arm_relations::ModelChain;
use crate::emergence::{OriginPhase, TraceLog};
use crate::error::Error;
use crate::trace_lang::{
    Alphabet, CombineKind, StateBudget, StateId, SymbolId, Trace, TraceAutomaton,
};

/// Name recorded in scenario metadata for the RNG algorithm.
pub const RNG_ID: &str = "splitmix64";

/// SplitMix64 (Steele, Lea, Flood). Fixed algorithm with published
/// reference outputs, so scenarios reproduce across reimplementations.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish draw in `0..n` (modulo bias is irrelevant at these sizes).
    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0);
        (self.next_u64() % n as u64) as usize
    }

    pub fn chance(&mut self, numerator: u64, denominator: u64) -> bool {
        self.next_u64() % denominator < numerator
    }
}

/// Generation parameters. `extra_traces_per_phase` controls defect
/// injection: how many traces with each intended origin to add to the log.
#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    pub seed: u64,
    pub alphabet_size: usize,
    pub states_per_model: usize,
    pub extra_traces_per_phase: BTreeMap<OriginPhase, usize>,
    pub log_size: usize,
    pub max_trace_len: usize,
}

impl ScenarioConfig {
    pub fn new(seed: u64) -> Self {
        ScenarioConfig {
            seed,
            alphabet_size: 2,
            states_per_model: 4,
            extra_traces_per_phase: BTreeMap::new(),
            log_size: 8,
            max_trace_len: 6,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        if !(2..=5).contains(&self.alphabet_size) {
            return Err(Error::semantic("alphabet_size must be between 2 and 5"));
        }
        if !(2..=8).contains(&self.states_per_model) {
            return Err(Error::semantic("states_per_model must be between 2 and 8"));
        }
        Ok(())
    }

    fn describe(&self) -> String {
        let inj: Vec<String> = self
            .extra_traces_per_phase
            .iter()
            .map(|(p, c)| format!("{p}={c}"))
            .collect();
        format!(
            "alphabet_size={} states_per_model={} log_size={} max_trace_len={} inject=[{}]",
            self.alphabet_size,
            self.states_per_model,
            self.log_size,
            self.max_trace_len,
            inj.join(",")
        )
    }
}

/// A generated chain with its observation log and injection ground truth.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub chain: ModelChain,
    /// Injected trace → intended origin phase.
    pub injected: BTreeMap<Trace, OriginPhase>,
    pub log: TraceLog,
    /// Non-fatal generation warnings (short supply, infeasible injections).
    pub warnings: Vec<String>,
}

fn alphabet_of_size(n: usize) -> Alphabet {
    let names: Vec<String> = (0..n)
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect();
    Alphabet::from_names(names).expect("generated alphabet is valid")
}

fn random_automaton(alphabet: &Alphabet, states: usize, rng: &mut SplitMix64) -> TraceAutomaton {
    let state_names = (0..states).map(|i| format!("s{i}")).collect();
    let mut edges: Vec<(StateId, SymbolId, StateId)> = Vec::new();
    for from in 0..states {
        for sym in 0..alphabet.len() {
            // dense enough that languages are usually rich
            if rng.chance(3, 5) {
                edges.push((from, sym, rng.below(states)));
            }
            if rng.chance(1, 5) {
                edges.push((from, sym, rng.below(states)));
            }
        }
    }
    let mut accepting = std::collections::BTreeSet::new();
    for s in 0..states {
        if rng.chance(1, 2) {
            accepting.insert(s);
        }
    }
    if accepting.is_empty() {
        accepting.insert(rng.below(states));
    }
    TraceAutomaton::new(alphabet.clone(), state_names, 0, accepting, edges)
        .expect("generated automaton is valid")
}

/// Refinement by construction: drop a random non-empty subset of the
/// transitions and accepting states. Removing structure can only shrink the
/// accepted language, so the result refines `model` without any inclusion
/// check.
fn random_sub_automaton(model: &TraceAutomaton, rng: &mut SplitMix64) -> TraceAutomaton {
    let edges = model.edges();
    let mut kept_edges: Vec<(StateId, SymbolId, StateId)> = Vec::new();
    let mut removed = 0usize;
    for &e in &edges {
        if rng.chance(1, 4) {
            removed += 1;
        } else {
            kept_edges.push(e);
        }
    }
    let mut accepting = std::collections::BTreeSet::new();
    for &s in model.accepting() {
        if rng.chance(1, 5) {
            removed += 1;
        } else {
            accepting.insert(s);
        }
    }
    if removed == 0 {
        // force at least one deletion where possible
        if !kept_edges.is_empty() {
            let idx = rng.below(kept_edges.len());
            kept_edges.remove(idx);
        } else if accepting.len() > 1 {
            let idx = rng.below(accepting.len());
            let victim = *accepting.iter().nth(idx).unwrap();
            accepting.remove(&victim);
        }
    }
    TraceAutomaton::new(
        model.alphabet().clone(),
        model.state_names().to_vec(),
        model.initial(),
        accepting,
        kept_edges,
    )
    .expect("sub-automaton is valid")
}

/// Deterministically generates a chain that refines by construction.
pub fn gen_chain(cfg: &ScenarioConfig) -> Result<ModelChain, Error> {
    cfg.validate()?;
    let mut rng = SplitMix64::new(cfg.seed);
    let alphabet = alphabet_of_size(cfg.alphabet_size);
    let rm = random_automaton(&alphabet, cfg.states_per_model, &mut rng);
    let dm = random_sub_automaton(&rm, &mut rng);
    let im = random_sub_automaton(&dm, &mut rng);
    ModelChain::new(rm, dm, im)
}

/// Samples up to `n` distinct traces accepted by `im` with length ≤
/// `max_len`. Returns fewer with a warning when the language is too small.
pub fn sample_log(
    im: &TraceAutomaton,
    n: usize,
    max_len: usize,
    rng: &mut SplitMix64,
    budget: StateBudget,
) -> Result<(TraceLog, Vec<String>), Error> {
    let mut warnings = Vec::new();
    // cap keeps pathological Σ*-like languages tractable
    let candidates = im.enumerate_capped(max_len, 4096.max(4 * n), budget)?;
    if candidates.is_empty() && n > 0 {
        warnings.push(format!(
            "implementation model accepts no trace of length <= {max_len}; log is empty"
        ));
        return Ok((TraceLog::new(vec![], "sampled"), warnings));
    }
    let mut picked = Vec::new();
    if candidates.len() <= n {
        if candidates.len() < n {
            warnings.push(format!(
                "requested {n} traces but only {} exist within length {max_len}",
                candidates.len()
            ));
        }
        picked.extend(candidates.iter().cloned());
    } else {
        // partial Fisher-Yates over the candidate indices
        let mut idx: Vec<usize> = (0..candidates.len()).collect();
        for i in 0..n {
            let j = i + rng.below(idx.len() - i);
            idx.swap(i, j);
            picked.push(candidates[idx[i]].clone());
        }
    }
    Ok((TraceLog::new(picked, "sampled"), warnings))
}

/// Adds `count` distinct traces whose origin against `chain` is exactly
/// `phase`, recording them as ground truth. Emits a warning instead of
/// failing when the required set difference is empty.
pub fn inject(
    scenario: &mut Scenario,
    phase: OriginPhase,
    count: usize,
    rng: &mut SplitMix64,
    budget: StateBudget,
) -> Result<(), Error> {
    if count == 0 {
        return Ok(());
    }
    let chain = &scenario.chain;
    let target = match phase {
        OriginPhase::RequirementsGap => chain.rm().complement(budget)?,
        OriginPhase::DesignGap => {
            TraceAutomaton::combine(CombineKind::Difference, chain.rm(), chain.dm(), budget)?
        }
        OriginPhase::ImplementationGap => {
            let specified =
                TraceAutomaton::combine(CombineKind::Intersection, chain.rm(), chain.dm(), budget)?;
            TraceAutomaton::combine(CombineKind::Difference, &specified, chain.im(), budget)?
        }
        OriginPhase::NotEmergent => {
            return Err(Error::semantic("cannot inject non-emergent traces"));
        }
    };
    // bound deep enough to expose the shortest members of any difference of
    // the generated models
    let max_len = 2 * chain.rm().state_count() + 2;
    let candidates = target.enumerate_capped(max_len, 256, budget)?;
    // re-check the origin so the ground truth stays consistent even for
    // chains where the refinement constraint does not hold
    let mut fresh: Vec<&Trace> = Vec::new();
    for t in &candidates {
        if !scenario.injected.contains_key(t)
            && crate::emergence::per_trace_origin(t, chain)? == phase
        {
            fresh.push(t);
        }
    }
    if fresh.is_empty() {
        scenario
            .warnings
            .push(format!("injection infeasible for {phase}: target language is empty"));
        return Ok(());
    }
    let take = count.min(fresh.len());
    if take < count {
        scenario.warnings.push(format!(
            "injection short for {phase}: requested {count}, only {take} available"
        ));
    }
    let mut idx: Vec<usize> = (0..fresh.len()).collect();
    let mut added = Vec::new();
    for i in 0..take {
        let j = i + rng.below(idx.len() - i);
        idx.swap(i, j);
        added.push(fresh[idx[i]].clone());
    }
    let mut traces = scenario.log.traces().to_vec();
    for t in added {
        traces.push(t.clone());
        scenario.injected.insert(t, phase);
    }
    scenario.log = TraceLog::new(traces, scenario.log.source().to_string());
    Ok(())
}

/// End-to-end generation: chain, conforming log sample, then injections in
/// fixed phase order.
pub fn generate(cfg: &ScenarioConfig, budget: StateBudget) -> Result<Scenario, Error> {
    cfg.validate()?;
    let chain = gen_chain(cfg)?;
    // generation consumed part of the stream; derive a fresh one for the log
    let mut rng = SplitMix64::new(cfg.seed ^ 0xD1B5_4A32_D192_ED03);
    let (log, warnings) = sample_log(chain.im(), cfg.log_size, cfg.max_trace_len, &mut rng, budget)?;
    let mut scenario = Scenario {
        chain,
        injected: BTreeMap::new(),
        log,
        warnings,
    };
    for phase in [
        OriginPhase::RequirementsGap,
        OriginPhase::DesignGap,
        OriginPhase::ImplementationGap,
    ] {
        let count = cfg.extra_traces_per_phase.get(&phase).copied().unwrap_or(0);
        inject(&mut scenario, phase, count, &mut rng, budget)?;
    }
    Ok(scenario)
}

/// Writes a scenario bundle: `rm.aut`, `dm.aut`, `im.aut` (canonical form),
/// `log.txt`, `truth.tsv`, and `meta.txt`.
pub fn write_bundle(
    dir: &Path,
    scenario: &Scenario,
    cfg: &ScenarioConfig,
    budget: StateBudget,
) -> Result<(), std::io::Error> {
    std::fs::create_dir_all(dir)?;
    let canon = |m: &TraceAutomaton| {
        m.canonical_text(budget)
            .map_err(|e| std::io::Error::new(std::io::ErrorKind::Other, e.to_string()))
    };
    std::fs::write(dir.join("rm.aut"), canon(scenario.chain.rm())?)?;
    std::fs::write(dir.join("dm.aut"), canon(scenario.chain.dm())?)?;
    std::fs::write(dir.join("im.aut"), canon(scenario.chain.im())?)?;

    let alphabet = scenario.chain.alphabet();
    let mut log = String::new();
    let names: Vec<&str> = alphabet.symbols().iter().map(|s| s.name()).collect();
    writeln!(log, "alphabet: {}", names.join(", ")).unwrap();
    for t in scenario.log.traces() {
        writeln!(log, "{}", t.render(alphabet)).unwrap();
    }
    std::fs::write(dir.join("log.txt"), log)?;

    let mut truth = String::new();
    for (t, phase) in &scenario.injected {
        writeln!(truth, "{}\t{}", t.render(alphabet), phase).unwrap();
    }
    std::fs::write(dir.join("truth.tsv"), truth)?;

    let mut meta = String::new();
    writeln!(meta, "seed: {}", cfg.seed).unwrap();
    writeln!(meta, "config: {}", cfg.describe()).unwrap();
    writeln!(meta, "rng: {RNG_ID}").unwrap();
    for w in &scenario.warnings {
        writeln!(meta, "warning: {w}").unwrap();
    }
    std::fs::write(dir.join("meta.txt"), meta)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arm_relations::check_chain;
    use crate::emergence::per_trace_origin;

    fn budget() -> StateBudget {
        StateBudget::default()
    }

    #[test]
    fn splitmix64_reference_vector() {
        // first outputs for seed 0, from the published reference
        let mut rng = SplitMix64::new(0);
        assert_eq!(rng.next_u64(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(rng.next_u64(), 0x6E78_9E6A_A1B9_65F4);
        assert_eq!(rng.next_u64(), 0x06C4_5D18_8009_454F);
    }

    #[test]
    fn gen_chain_is_deterministic() {
        let cfg = ScenarioConfig::new(42);
        let a = gen_chain(&cfg).unwrap();
        let b = gen_chain(&cfg).unwrap();
        assert_eq!(
            a.rm().canonical_text(budget()).unwrap(),
            b.rm().canonical_text(budget()).unwrap()
        );
        assert_eq!(
            a.im().canonical_text(budget()).unwrap(),
            b.im().canonical_text(budget()).unwrap()
        );
    }

    #[test]
    fn gen_chain_refines_by_construction() {
        for seed in 0..40u64 {
            let mut cfg = ScenarioConfig::new(seed);
            cfg.states_per_model = 2 + (seed % 7) as usize;
            cfg.alphabet_size = 2 + (seed % 4) as usize;
            let chain = gen_chain(&cfg).unwrap();
            assert!(
                check_chain(&chain, budget()).unwrap().chain_holds,
                "seed {seed}"
            );
        }
    }

    #[test]
    fn gen_chain_respects_state_bound() {
        let mut cfg = ScenarioConfig::new(7);
        cfg.states_per_model = 2;
        let chain = gen_chain(&cfg).unwrap();
        assert!(chain.rm().state_count() <= 2);
        assert!(chain.dm().state_count() <= 2);
        assert!(chain.im().state_count() <= 2);
    }

    #[test]
    fn sample_log_traces_are_accepted() {
        for seed in 0..20u64 {
            let cfg = ScenarioConfig::new(seed);
            let chain = gen_chain(&cfg).unwrap();
            let mut rng = SplitMix64::new(seed + 1);
            let (log, _) = sample_log(chain.im(), 6, 5, &mut rng, budget()).unwrap();
            for t in log.traces() {
                assert!(chain.im().accepts(t).unwrap());
            }
        }
    }

    #[test]
    fn sample_log_empty_language() {
        let alpha = Alphabet::from_names(["a", "b"]).unwrap();
        let empty = TraceAutomaton::empty_language(alpha);
        let mut rng = SplitMix64::new(1);
        let (log, warnings) = sample_log(&empty, 3, 4, &mut rng, budget()).unwrap();
        assert!(log.is_empty());
        assert_eq!(warnings.len(), 1);
    }

    #[test]
    fn sample_log_short_supply() {
        let alpha = Alphabet::from_names(["a", "b"]).unwrap();
        let one = TraceAutomaton::from_traces(
            &std::collections::BTreeSet::from([Trace::from_names(&["a", "b"], &alpha).unwrap()]),
            alpha,
        )
        .unwrap();
        let mut rng = SplitMix64::new(1);
        let (log, warnings) = sample_log(&one, 3, 2, &mut rng, budget()).unwrap();
        assert_eq!(log.len(), 1);
        assert!(!warnings.is_empty());
    }

    #[test]
    fn injected_traces_have_intended_origin() {
        let mut found_all = false;
        for seed in 0..60u64 {
            let mut cfg = ScenarioConfig::new(seed);
            cfg.states_per_model = 4;
            cfg.alphabet_size = 2;
            for phase in [
                OriginPhase::RequirementsGap,
                OriginPhase::DesignGap,
                OriginPhase::ImplementationGap,
            ] {
                cfg.extra_traces_per_phase.insert(phase, 2);
            }
            let scenario = generate(&cfg, budget()).unwrap();
            for (t, intended) in &scenario.injected {
                let actual = per_trace_origin(t, &scenario.chain).unwrap();
                assert_eq!(actual, *intended, "seed {seed}");
            }
            let phases: std::collections::BTreeSet<_> =
                scenario.injected.values().copied().collect();
            if phases.len() == 3 {
                found_all = true;
            }
        }
        assert!(found_all, "no seed produced injections in all three phases");
    }

    #[test]
    fn infeasible_injection_warns_and_skips() {
        // all three phases identical: design/implementation gaps infeasible
        let alpha = Alphabet::from_names(["a", "b"]).unwrap();
        let all = TraceAutomaton::empty_language(alpha.clone())
            .complement(budget())
            .unwrap();
        let chain = ModelChain::new(all.clone(), all.clone(), all).unwrap();
        let mut scenario = Scenario {
            chain,
            injected: BTreeMap::new(),
            log: TraceLog::new(vec![], "t"),
            warnings: vec![],
        };
        let mut rng = SplitMix64::new(3);
        for phase in [
            OriginPhase::RequirementsGap,
            OriginPhase::DesignGap,
            OriginPhase::ImplementationGap,
        ] {
            inject(&mut scenario, phase, 1, &mut rng, budget()).unwrap();
        }
        assert!(scenario.injected.is_empty());
        assert_eq!(scenario.warnings.len(), 3);
    }

    #[test]
    fn zero_count_injection_is_noop() {
        let cfg = ScenarioConfig::new(5);
        let chain = gen_chain(&cfg).unwrap();
        let mut scenario = Scenario {
            chain,
            injected: BTreeMap::new(),
            log: TraceLog::new(vec![], "t"),
            warnings: vec![],
        };
        let mut rng = SplitMix64::new(5);
        inject(&mut scenario, OriginPhase::RequirementsGap, 0, &mut rng, budget()).unwrap();
        assert!(scenario.injected.is_empty());
        assert!(scenario.warnings.is_empty());
    }

    #[test]
    fn bundle_write_is_deterministic() {
        let mut cfg = ScenarioConfig::new(11);
        cfg.extra_traces_per_phase
            .insert(OriginPhase::RequirementsGap, 1);
        let dir1 = tempfile::tempdir().unwrap();
        let dir2 = tempfile::tempdir().unwrap();
        for dir in [&dir1, &dir2] {
            let s = generate(&cfg, budget()).unwrap();
            write_bundle(dir.path(), &s, &cfg, budget()).unwrap();
        }
        for file in ["rm.aut", "dm.aut", "im.aut", "log.txt", "truth.tsv", "meta.txt"] {
            let a = std::fs::read(dir1.path().join(file)).unwrap();
            let b = std::fs::read(dir2.path().join(file)).unwrap();
            assert_eq!(a, b, "{file}");
        }
    }
}
