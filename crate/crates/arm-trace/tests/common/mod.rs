//! Test-only oracle: an independent decision path for language questions.
//!
//! Nothing here goes through the library's determinize/complement/product
//! machinery. Membership is simulated directly on state bitmasks; inclusion
//! and intersection emptiness are decided by an exhaustive breadth-first
//! search over pairs of reachable state sets, which covers every
//! distinguishable trace prefix up to the product-state bound.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use arm_trace::scenario::SplitMix64;
use arm_trace::trace_lang::{Alphabet, Trace, TraceAutomaton};

/// Arbitrary-width state bitset (64-bit blocks).
pub type Bits = Vec<u64>;

fn bits_empty(blocks: usize) -> Bits {
    vec![0; blocks]
}

fn bits_set(bits: &mut Bits, i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

fn bits_or(dst: &mut Bits, src: &Bits) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d |= s;
    }
}

fn bits_intersects(a: &Bits, b: &Bits) -> bool {
    a.iter().zip(b).any(|(x, y)| x & y != 0)
}

fn bits_is_zero(a: &Bits) -> bool {
    a.iter().all(|&x| x == 0)
}

/// Bitset view of an automaton for fast direct simulation.
pub struct Mask {
    pub k: usize,
    blocks: usize,
    pub initial: Bits,
    pub accepting: Bits,
    /// succ[state][symbol] = successor set
    pub succ: Vec<Vec<Bits>>,
}

impl Mask {
    pub fn of(aut: &TraceAutomaton) -> Mask {
        let n = aut.state_count();
        let k = aut.alphabet().len();
        let blocks = n.div_ceil(64);
        let mut succ = vec![vec![bits_empty(blocks); k]; n];
        for (from, sym, to) in aut.edges() {
            bits_set(&mut succ[from][sym], to);
        }
        let mut accepting = bits_empty(blocks);
        for &s in aut.accepting() {
            bits_set(&mut accepting, s);
        }
        let mut initial = bits_empty(blocks);
        bits_set(&mut initial, aut.initial());
        Mask {
            k,
            blocks,
            initial,
            accepting,
            succ,
        }
    }

    pub fn step(&self, set: &Bits, sym: usize) -> Bits {
        let mut next = bits_empty(self.blocks);
        for (block_idx, &block) in set.iter().enumerate() {
            let mut m = block;
            while m != 0 {
                let s = block_idx * 64 + m.trailing_zeros() as usize;
                m &= m - 1;
                bits_or(&mut next, &self.succ[s][sym]);
            }
        }
        next
    }

    pub fn accepts_set(&self, set: &Bits) -> bool {
        bits_intersects(set, &self.accepting)
    }

    /// Direct NFA simulation, independent of `TraceAutomaton::accepts`.
    pub fn simulate(&self, trace: &[usize]) -> bool {
        let mut cur = self.initial.clone();
        for &sym in trace {
            cur = self.step(&cur, sym);
            if bits_is_zero(&cur) {
                return false;
            }
        }
        self.accepts_set(&cur)
    }
}

/// All traces over `k` symbols with length ≤ `max_len`, in length-then-lex
/// order, as symbol-index vectors.
pub fn all_traces(k: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut level: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for t in &level {
            for sym in 0..k {
                let mut u = t.clone();
                u.push(sym);
                next.push(u);
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

/// Shortest trace accepted by `b` but not by `a` (i.e. refuting
/// L(b) ⊆ L(a)), or `None` when the inclusion holds. Exhaustive pair-set
/// BFS; symbols explored in alphabet order, so the result is also
/// lexicographically least among the shortest.
pub fn oracle_inclusion_counterexample(a: &TraceAutomaton, b: &TraceAutomaton) -> Option<Vec<usize>> {
    let ma = Mask::of(a);
    let mb = Mask::of(b);
    let start = (ma.initial.clone(), mb.initial.clone());
    let mut seen: HashSet<(Bits, Bits)> = HashSet::from([start.clone()]);
    let mut queue: VecDeque<((Bits, Bits), Vec<usize>)> = VecDeque::from([(start, Vec::new())]);
    while let Some(((sa, sb), trace)) = queue.pop_front() {
        if mb.accepts_set(&sb) && !ma.accepts_set(&sa) {
            return Some(trace);
        }
        for sym in 0..ma.k {
            let next = (ma.step(&sa, sym), mb.step(&sb, sym));
            if seen.insert(next.clone()) {
                let mut t = trace.clone();
                t.push(sym);
                queue.push_back((next, t));
            }
        }
    }
    None
}

/// Shortest trace accepted by both automata, or `None` when the languages
/// are disjoint.
pub fn oracle_shared_trace(a: &TraceAutomaton, b: &TraceAutomaton) -> Option<Vec<usize>> {
    let ma = Mask::of(a);
    let mb = Mask::of(b);
    let start = (ma.initial.clone(), mb.initial.clone());
    let mut seen: HashSet<(Bits, Bits)> = HashSet::from([start.clone()]);
    let mut queue: VecDeque<((Bits, Bits), Vec<usize>)> = VecDeque::from([(start, Vec::new())]);
    while let Some(((sa, sb), trace)) = queue.pop_front() {
        if ma.accepts_set(&sa) && mb.accepts_set(&sb) {
            return Some(trace);
        }
        for sym in 0..ma.k {
            let next = (ma.step(&sa, sym), mb.step(&sb, sym));
            if !bits_is_zero(&next.0) && !bits_is_zero(&next.1) && seen.insert(next.clone()) {
                let mut t = trace.clone();
                t.push(sym);
                queue.push_back((next, t));
            }
        }
    }
    None
}

pub fn oracle_includes(a: &TraceAutomaton, b: &TraceAutomaton) -> bool {
    oracle_inclusion_counterexample(a, b).is_none()
}

pub fn oracle_equivalent(a: &TraceAutomaton, b: &TraceAutomaton) -> bool {
    oracle_includes(a, b) && oracle_includes(b, a)
}

pub fn oracle_disjoint(a: &TraceAutomaton, b: &TraceAutomaton) -> bool {
    oracle_shared_trace(a, b).is_none()
}

/// Random automaton with up to `max_states` states over `alphabet`,
/// deterministic in the RNG stream.
pub fn random_automaton(
    alphabet: &Alphabet,
    max_states: usize,
    rng: &mut SplitMix64,
) -> TraceAutomaton {
    let n = 1 + rng.below(max_states);
    let state_names = (0..n).map(|i| format!("s{i}")).collect();
    let mut edges = Vec::new();
    for from in 0..n {
        for sym in 0..alphabet.len() {
            // up to two targets per (state, symbol) for nondeterminism
            if rng.chance(3, 5) {
                edges.push((from, sym, rng.below(n)));
            }
            if rng.chance(1, 4) {
                edges.push((from, sym, rng.below(n)));
            }
        }
    }
    let mut accepting = BTreeSet::new();
    for s in 0..n {
        if rng.chance(2, 5) {
            accepting.insert(s);
        }
    }
    TraceAutomaton::new(alphabet.clone(), state_names, 0, accepting, edges).unwrap()
}

pub fn abc() -> Alphabet {
    Alphabet::from_names(["a", "b", "c"]).unwrap()
}

pub fn trace_of(events: &[usize]) -> Trace {
    Trace::new(events.to_vec())
}
