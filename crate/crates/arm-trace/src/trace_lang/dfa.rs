//! Internal complete-DFA machinery: subset construction, products,
//! shortest-witness search, enumeration, and Moore minimization.

use std::collections::{BTreeSet, HashMap, VecDeque};

use super::{Alphabet, StateBudget, StateId, SymbolId, Trace, TraceAutomaton};
use crate::error::Error;

/// A complete deterministic automaton. State 0 is initial; every state has
/// exactly one successor per symbol.
#[derive(Debug, Clone)]
pub(super) struct Dfa {
    alphabet: Alphabet,
    accepting: Vec<bool>,
    // delta[state][symbol] -> state
    delta: Vec<Vec<StateId>>,
}

impl Dfa {
    /// Subset construction. The empty subset acts as the sink, so the result
    /// is always complete. Aborts once more than `budget` subsets exist.
    pub(super) fn determinize(nfa: &TraceAutomaton, budget: StateBudget) -> Result<Dfa, Error> {
        let k = nfa.alphabet().len();
        let mut index: HashMap<BTreeSet<StateId>, StateId> = HashMap::new();
        let mut subsets: Vec<BTreeSet<StateId>> = Vec::new();
        let mut delta: Vec<Vec<StateId>> = Vec::new();
        let mut queue = VecDeque::new();

        let start: BTreeSet<StateId> = BTreeSet::from([nfa.initial()]);
        index.insert(start.clone(), 0);
        subsets.push(start);
        queue.push_back(0usize);

        while let Some(id) = queue.pop_front() {
            let mut row = Vec::with_capacity(k);
            for sym in 0..k {
                let mut next = BTreeSet::new();
                for &s in &subsets[id] {
                    next.extend(nfa.transitions_from(s, sym).iter().copied());
                }
                let next_id = match index.get(&next) {
                    Some(&i) => i,
                    None => {
                        if subsets.len() >= budget.0 {
                            return Err(Error::BudgetExceeded { limit: budget.0 });
                        }
                        let i = subsets.len();
                        index.insert(next.clone(), i);
                        subsets.push(next);
                        queue.push_back(i);
                        i
                    }
                };
                row.push(next_id);
            }
            delta.push(row);
        }

        let accepting = subsets
            .iter()
            .map(|set| set.iter().any(|s| nfa.accepting().contains(s)))
            .collect();
        Ok(Dfa {
            alphabet: nfa.alphabet().clone(),
            accepting,
            delta,
        })
    }

    pub(super) fn flip_accepting(&mut self) {
        for a in &mut self.accepting {
            *a = !*a;
        }
    }

    /// Reachable-pair product; acceptance decided by `accept`.
    pub(super) fn product(
        a: &Dfa,
        b: &Dfa,
        budget: StateBudget,
        accept: impl Fn(bool, bool) -> bool,
    ) -> Result<Dfa, Error> {
        let k = a.alphabet.len();
        let mut index: HashMap<(StateId, StateId), StateId> = HashMap::new();
        let mut pairs: Vec<(StateId, StateId)> = vec![(0, 0)];
        let mut delta: Vec<Vec<StateId>> = Vec::new();
        index.insert((0, 0), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(id) = queue.pop_front() {
            let (x, y) = pairs[id];
            let mut row = Vec::with_capacity(k);
            for sym in 0..k {
                let next = (a.delta[x][sym], b.delta[y][sym]);
                let next_id = match index.get(&next) {
                    Some(&i) => i,
                    None => {
                        if pairs.len() >= budget.0 {
                            return Err(Error::BudgetExceeded { limit: budget.0 });
                        }
                        let i = pairs.len();
                        index.insert(next, i);
                        pairs.push(next);
                        queue.push_back(i);
                        i
                    }
                };
                row.push(next_id);
            }
            delta.push(row);
        }
        let accepting = pairs
            .iter()
            .map(|&(x, y)| accept(a.accepting[x], b.accepting[y]))
            .collect();
        Ok(Dfa {
            alphabet: a.alphabet.clone(),
            accepting,
            delta,
        })
    }

    /// Shortest accepted trace, ties broken lexicographically. BFS visiting
    /// symbols in alphabet order yields exactly that trace.
    pub(super) fn shortest_accepted(&self) -> Option<Trace> {
        let n = self.delta.len();
        let mut parent: Vec<Option<(StateId, SymbolId)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut hit = if self.accepting[0] { Some(0) } else { None };
        'bfs: while let Some(s) = queue.pop_front() {
            if hit.is_some() {
                break;
            }
            for sym in 0..self.alphabet.len() {
                let to = self.delta[s][sym];
                if !seen[to] {
                    seen[to] = true;
                    parent[to] = Some((s, sym));
                    if self.accepting[to] {
                        hit = Some(to);
                        break 'bfs;
                    }
                    queue.push_back(to);
                }
            }
        }
        let mut at = hit?;
        let mut events = Vec::new();
        while let Some((prev, sym)) = parent[at] {
            events.push(sym);
            at = prev;
        }
        events.reverse();
        Some(Trace::new(events))
    }

    /// Accepted traces of length ≤ `max_len` in length-then-lex order,
    /// optionally stopping after `cap` traces.
    pub(super) fn enumerate(&self, max_len: usize, cap: Option<usize>) -> Vec<Trace> {
        let mut out = Vec::new();
        let full = |out: &Vec<Trace>| cap.is_some_and(|c| out.len() >= c);
        // (trace, state) frontier for the current length, kept in lex order
        let mut frontier: Vec<(Vec<SymbolId>, StateId)> = vec![(Vec::new(), 0)];
        // states from which no accepting state is reachable can be dropped
        let live = self.live_states();
        if self.accepting[0] {
            out.push(Trace::empty());
        }
        for _ in 0..max_len {
            if full(&out) {
                break;
            }
            let mut next = Vec::new();
            for (trace, state) in &frontier {
                for sym in 0..self.alphabet.len() {
                    let to = self.delta[*state][sym];
                    if !live[to] {
                        continue;
                    }
                    let mut t = trace.clone();
                    t.push(sym);
                    if self.accepting[to] && !full(&out) {
                        out.push(Trace::new(t.clone()));
                    }
                    next.push((t, to));
                }
            }
            frontier = next;
            if frontier.is_empty() {
                break;
            }
        }
        if let Some(c) = cap {
            out.truncate(c);
        }
        out
    }

    /// States that can reach some accepting state.
    fn live_states(&self) -> Vec<bool> {
        let n = self.delta.len();
        // reverse edges
        let mut rev: Vec<Vec<StateId>> = vec![Vec::new(); n];
        for (from, row) in self.delta.iter().enumerate() {
            for &to in row {
                rev[to].push(from);
            }
        }
        let mut live = vec![false; n];
        let mut queue: VecDeque<StateId> = (0..n).filter(|&s| self.accepting[s]).collect();
        for &s in &queue {
            live[s] = true;
        }
        while let Some(s) = queue.pop_front() {
            for &p in &rev[s] {
                if !live[p] {
                    live[p] = true;
                    queue.push_back(p);
                }
            }
        }
        live
    }

    /// Moore partition refinement on the complete DFA. Refinement stops when
    /// the class count no longer grows; classes are numbered in state order,
    /// so the initial state's class is always 0.
    pub(super) fn minimize(&self) -> Dfa {
        let n = self.delta.len();
        let k = self.alphabet.len();
        let mut class: Vec<usize> = self.accepting.iter().map(|&a| a as usize).collect();
        let mut num_classes = count_classes(&class);
        loop {
            // signature = (class, classes of successors)
            let mut index: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let mut next_class = vec![0usize; n];
            for s in 0..n {
                let sig = (
                    class[s],
                    (0..k).map(|sym| class[self.delta[s][sym]]).collect::<Vec<_>>(),
                );
                let fresh = index.len();
                next_class[s] = *index.entry(sig).or_insert(fresh);
            }
            let next_num = index.len();
            class = next_class;
            if next_num == num_classes {
                break;
            }
            num_classes = next_num;
        }
        let m = num_classes;
        let mut delta = vec![vec![0usize; k]; m];
        let mut accepting = vec![false; m];
        for s in 0..n {
            let c = class[s];
            accepting[c] = self.accepting[s];
            for sym in 0..k {
                delta[c][sym] = class[self.delta[s][sym]];
            }
        }
        debug_assert_eq!(class[0], 0);
        Dfa {
            alphabet: self.alphabet.clone(),
            accepting,
            delta,
        }
    }

    /// Converts to a [`TraceAutomaton`] keeping every state and transition.
    pub(super) fn into_automaton(self) -> TraceAutomaton {
        let n = self.delta.len();
        let state_names = (0..n).map(|i| format!("q{i}")).collect();
        let accepting = (0..n).filter(|&s| self.accepting[s]).collect();
        let mut edges = Vec::new();
        for (from, row) in self.delta.iter().enumerate() {
            for (sym, &to) in row.iter().enumerate() {
                edges.push((from, sym, to));
            }
        }
        TraceAutomaton::new(self.alphabet, state_names, 0, accepting, edges)
            .expect("DFA conversion preserves validity")
    }

    /// Converts to a [`TraceAutomaton`], dropping states that cannot reach
    /// acceptance (the initial state is always kept).
    pub(super) fn into_trimmed_automaton(self) -> TraceAutomaton {
        let live = self.live_states();
        let n = self.delta.len();
        let mut keep: Vec<bool> = live.clone();
        keep[0] = true;
        let mut map = vec![usize::MAX; n];
        let mut count = 0usize;
        for s in 0..n {
            if keep[s] {
                map[s] = count;
                count += 1;
            }
        }
        let state_names = (0..count).map(|i| format!("q{i}")).collect();
        let accepting = (0..n)
            .filter(|&s| keep[s] && self.accepting[s])
            .map(|s| map[s])
            .collect();
        let mut edges = Vec::new();
        for (from, row) in self.delta.iter().enumerate() {
            if !keep[from] {
                continue;
            }
            for (sym, &to) in row.iter().enumerate() {
                if keep[to] {
                    edges.push((map[from], sym, map[to]));
                }
            }
        }
        TraceAutomaton::new(self.alphabet, state_names, map[0], accepting, edges)
            .expect("trimming preserves validity")
    }
}

fn count_classes(class: &[usize]) -> usize {
    class.iter().collect::<BTreeSet<_>>().len()
}
