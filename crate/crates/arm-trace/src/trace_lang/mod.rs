//! Finite automata over event alphabets and the language-level decision
//! procedures used by the rest of the crate.
//!
//! An automaton may be nondeterministic and may contain unreachable states;
//! every boolean operation goes through an internal subset construction that
//! is capped by a [`StateBudget`]. All values are immutable after
//! construction and every operation is a pure function of its inputs.

mod dfa;
mod parse;

pub use parse::parse_automaton;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::Error;
use dfa::Dfa;

/// Index of a symbol within its [`Alphabet`] (declaration order).
pub type SymbolId = usize;
/// Index of a state within its [`TraceAutomaton`].
pub type StateId = usize;

/// One observable event. The name is a non-empty token with no whitespace
/// and no comma.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EventSymbol {
    name: String,
}

impl EventSymbol {
    pub fn new(name: impl Into<String>) -> Result<Self, Error> {
        let name = name.into();
        if name.is_empty() {
            return Err(Error::semantic("event symbol name must be non-empty"));
        }
        if name.chars().any(|c| c.is_whitespace() || c == ',') {
            return Err(Error::semantic(format!(
                "event symbol `{name}` may not contain whitespace or commas"
            )));
        }
        Ok(EventSymbol { name })
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl fmt::Display for EventSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Finite ordered set of event symbols. Declaration order is significant:
/// it fixes the lexicographic order used for witness tie-breaking and for
/// every deterministic output in the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<EventSymbol>,
}

impl Alphabet {
    pub fn new(symbols: Vec<EventSymbol>) -> Result<Self, Error> {
        if symbols.is_empty() {
            return Err(Error::semantic("alphabet must be non-empty"));
        }
        let mut seen = BTreeSet::new();
        for s in &symbols {
            if !seen.insert(s.name().to_string()) {
                return Err(Error::semantic(format!(
                    "duplicate symbol `{}` in alphabet",
                    s.name()
                )));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// Convenience constructor from plain names.
    pub fn from_names<I, S>(names: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols = names
            .into_iter()
            .map(EventSymbol::new)
            .collect::<Result<Vec<_>, _>>()?;
        Alphabet::new(symbols)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[EventSymbol] {
        &self.symbols
    }

    pub fn symbol(&self, id: SymbolId) -> &EventSymbol {
        &self.symbols[id]
    }

    pub fn lookup(&self, name: &str) -> Option<SymbolId> {
        self.symbols.iter().position(|s| s.name() == name)
    }

    fn describe(&self) -> String {
        self.symbols
            .iter()
            .map(|s| s.name())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Errors unless `self` and `other` declare the same symbols in the same
    /// order.
    pub fn require_same(&self, other: &Alphabet) -> Result<(), Error> {
        if self != other {
            return Err(Error::AlphabetMismatch {
                left: self.describe(),
                right: other.describe(),
            });
        }
        Ok(())
    }
}

/// One finite behavior trace: a sequence of symbol indices into an alphabet.
///
/// A trace is only meaningful together with the alphabet it was parsed
/// against. The derived `Ord` is lexicographic under the alphabet ordering;
/// use [`Trace::cmp_len_lex`] for the shortest-first order used by witnesses
/// and enumeration.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Trace {
    events: Vec<SymbolId>,
}

impl Trace {
    pub fn empty() -> Self {
        Trace { events: Vec::new() }
    }

    pub fn new(events: Vec<SymbolId>) -> Self {
        Trace { events }
    }

    /// Builds a trace from event names, rejecting symbols outside `alphabet`.
    pub fn from_names(names: &[&str], alphabet: &Alphabet) -> Result<Self, Error> {
        let mut events = Vec::with_capacity(names.len());
        for name in names {
            let id = alphabet
                .lookup(name)
                .ok_or_else(|| Error::foreign(*name, "trace event"))?;
            events.push(id);
        }
        Ok(Trace { events })
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn events(&self) -> &[SymbolId] {
        &self.events
    }

    /// Shortest-first, then lexicographic under the alphabet ordering.
    pub fn cmp_len_lex(&self, other: &Trace) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.events.cmp(&other.events))
    }

    /// Renders the trace as whitespace-separated event names; the empty
    /// trace renders as `-`.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        if self.events.is_empty() {
            return "-".to_string();
        }
        self.events
            .iter()
            .map(|&id| alphabet.symbol(id).name())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Why a witness trace was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    /// Accepted by the left language but not the right one.
    AcceptedByLeftNotRight,
    /// A sample accepted trace (e.g. emptiness refutation).
    AcceptedSample,
}

/// Evidence trace for a decided language property. Always the shortest
/// qualifying trace; ties broken lexicographically under the alphabet order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub trace: Trace,
    pub kind: WitnessKind,
}

/// Outcome of an inclusion check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Inclusion {
    Holds,
    Fails(Witness),
}

impl Inclusion {
    pub fn holds(&self) -> bool {
        matches!(self, Inclusion::Holds)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Inclusion::Holds => None,
            Inclusion::Fails(w) => Some(w),
        }
    }
}

/// Outcome of an emptiness check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Emptiness {
    Empty,
    NonEmpty(Witness),
}

impl Emptiness {
    pub fn is_empty(&self) -> bool {
        matches!(self, Emptiness::Empty)
    }
}

/// Kind of boolean language combination.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombineKind {
    Union,
    Intersection,
    Difference,
}

/// Cap on the number of states the subset construction may create before
/// aborting with [`Error::BudgetExceeded`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StateBudget(pub usize);

impl Default for StateBudget {
    fn default() -> Self {
        StateBudget(1_000_000)
    }
}

/// A finite automaton over an event alphabet. Nondeterminism and
/// unreachable states are permitted; the accepted language is the semantics
/// of the model the automaton represents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceAutomaton {
    alphabet: Alphabet,
    state_names: Vec<String>,
    initial: StateId,
    accepting: BTreeSet<StateId>,
    // transitions[state][symbol] = successor set
    transitions: Vec<Vec<BTreeSet<StateId>>>,
}

impl TraceAutomaton {
    /// Validates and builds an automaton from explicit parts.
    pub fn new(
        alphabet: Alphabet,
        state_names: Vec<String>,
        initial: StateId,
        accepting: BTreeSet<StateId>,
        edges: Vec<(StateId, SymbolId, StateId)>,
    ) -> Result<Self, Error> {
        if state_names.is_empty() {
            return Err(Error::semantic("automaton must have at least one state"));
        }
        let mut seen = BTreeSet::new();
        for name in &state_names {
            if !seen.insert(name.clone()) {
                return Err(Error::semantic(format!("duplicate state name `{name}`")));
            }
        }
        let n = state_names.len();
        if initial >= n {
            return Err(Error::semantic("initial state out of range"));
        }
        if let Some(&s) = accepting.iter().find(|&&s| s >= n) {
            return Err(Error::semantic(format!("accepting state {s} out of range")));
        }
        let mut transitions = vec![vec![BTreeSet::new(); alphabet.len()]; n];
        for (from, sym, to) in edges {
            if from >= n || to >= n {
                return Err(Error::semantic("transition endpoint out of range"));
            }
            if sym >= alphabet.len() {
                return Err(Error::semantic("transition symbol out of range"));
            }
            transitions[from][sym].insert(to);
        }
        Ok(TraceAutomaton {
            alphabet,
            state_names,
            initial,
            accepting,
            transitions,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.state_names.len()
    }

    pub fn state_names(&self) -> &[String] {
        &self.state_names
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn accepting(&self) -> &BTreeSet<StateId> {
        &self.accepting
    }

    /// All transitions as (from, symbol, to), sorted.
    pub fn edges(&self) -> Vec<(StateId, SymbolId, StateId)> {
        let mut out = Vec::new();
        for (from, by_sym) in self.transitions.iter().enumerate() {
            for (sym, tos) in by_sym.iter().enumerate() {
                for &to in tos {
                    out.push((from, sym, to));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Automaton accepting the empty language over `alphabet`.
    pub fn empty_language(alphabet: Alphabet) -> TraceAutomaton {
        TraceAutomaton::new(alphabet, vec!["q0".to_string()], 0, BTreeSet::new(), vec![])
            .expect("one-state automaton is always valid")
    }

    /// True iff some run over `t` ends in an accepting state.
    pub fn accepts(&self, t: &Trace) -> Result<bool, Error> {
        let mut current: BTreeSet<StateId> = BTreeSet::from([self.initial]);
        for &sym in t.events() {
            if sym >= self.alphabet.len() {
                return Err(Error::foreign(
                    format!("#{sym}"),
                    "trace symbol index outside automaton alphabet",
                ));
            }
            let mut next = BTreeSet::new();
            for &s in &current {
                next.extend(self.transitions[s][sym].iter().copied());
            }
            current = next;
            if current.is_empty() {
                return Ok(false);
            }
        }
        Ok(current.iter().any(|s| self.accepting.contains(s)))
    }

    /// Boolean combination of two languages over a shared alphabet.
    pub fn combine(
        kind: CombineKind,
        a: &TraceAutomaton,
        b: &TraceAutomaton,
        budget: StateBudget,
    ) -> Result<TraceAutomaton, Error> {
        a.alphabet.require_same(&b.alphabet)?;
        let da = Dfa::determinize(a, budget)?;
        let db = Dfa::determinize(b, budget)?;
        let product = Dfa::product(&da, &db, budget, |x, y| match kind {
            CombineKind::Union => x || y,
            CombineKind::Intersection => x && y,
            CombineKind::Difference => x && !y,
        })?;
        Ok(product.into_automaton())
    }

    /// Accepts exactly the traces over the alphabet that `self` rejects.
    pub fn complement(&self, budget: StateBudget) -> Result<TraceAutomaton, Error> {
        let mut dfa = Dfa::determinize(self, budget)?;
        dfa.flip_accepting();
        Ok(dfa.into_automaton())
    }

    /// Emptiness check with a shortest accepted trace as refutation.
    pub fn is_empty(&self, budget: StateBudget) -> Result<Emptiness, Error> {
        let dfa = Dfa::determinize(self, budget)?;
        Ok(match dfa.shortest_accepted() {
            None => Emptiness::Empty,
            Some(trace) => Emptiness::NonEmpty(Witness {
                trace,
                kind: WitnessKind::AcceptedSample,
            }),
        })
    }

    /// Decides L(b) ⊆ L(a); on failure the witness is the shortest trace
    /// accepted by `b` but not by `a`.
    pub fn includes(
        a: &TraceAutomaton,
        b: &TraceAutomaton,
        budget: StateBudget,
    ) -> Result<Inclusion, Error> {
        a.alphabet.require_same(&b.alphabet)?;
        let da = Dfa::determinize(a, budget)?;
        let db = Dfa::determinize(b, budget)?;
        let diff = Dfa::product(&db, &da, budget, |x, y| x && !y)?;
        Ok(match diff.shortest_accepted() {
            None => Inclusion::Holds,
            Some(trace) => Inclusion::Fails(Witness {
                trace,
                kind: WitnessKind::AcceptedByLeftNotRight,
            }),
        })
    }

    /// Language equality: inclusion in both directions.
    pub fn equivalent(
        a: &TraceAutomaton,
        b: &TraceAutomaton,
        budget: StateBudget,
    ) -> Result<bool, Error> {
        Ok(TraceAutomaton::includes(a, b, budget)?.holds()
            && TraceAutomaton::includes(b, a, budget)?.holds())
    }

    /// Exactly the accepted traces of length ≤ `max_len`, sorted by length
    /// then lexicographically under the alphabet order.
    pub fn enumerate(&self, max_len: usize, budget: StateBudget) -> Result<Vec<Trace>, Error> {
        let dfa = Dfa::determinize(self, budget)?;
        Ok(dfa.enumerate(max_len, None))
    }

    /// Like [`enumerate`](Self::enumerate) but stops after `cap` accepted
    /// traces. The returned traces are still the first ones in
    /// length-then-lex order.
    pub fn enumerate_capped(
        &self,
        max_len: usize,
        cap: usize,
        budget: StateBudget,
    ) -> Result<Vec<Trace>, Error> {
        let dfa = Dfa::determinize(self, budget)?;
        Ok(dfa.enumerate(max_len, Some(cap)))
    }

    /// Prefix-tree acceptor: a deterministic automaton accepting exactly the
    /// given finite trace set.
    pub fn from_traces(traces: &BTreeSet<Trace>, alphabet: Alphabet) -> Result<TraceAutomaton, Error> {
        for t in traces {
            for &sym in t.events() {
                if sym >= alphabet.len() {
                    return Err(Error::foreign(
                        format!("#{sym}"),
                        "trace symbol index outside alphabet",
                    ));
                }
            }
        }
        // children[state][symbol] -> state
        let mut children: Vec<BTreeMap<SymbolId, StateId>> = vec![BTreeMap::new()];
        let mut accepting = BTreeSet::new();
        for t in traces {
            let mut at = 0usize;
            for &sym in t.events() {
                at = match children[at].get(&sym) {
                    Some(&next) => next,
                    None => {
                        children.push(BTreeMap::new());
                        let next = children.len() - 1;
                        children[at].insert(sym, next);
                        next
                    }
                };
            }
            accepting.insert(at);
        }
        let state_names = (0..children.len()).map(|i| format!("q{i}")).collect();
        let mut edges = Vec::new();
        for (from, kids) in children.iter().enumerate() {
            for (&sym, &to) in kids {
                edges.push((from, sym, to));
            }
        }
        TraceAutomaton::new(alphabet, state_names, 0, accepting, edges)
    }

    /// Determinizes, completes, and minimizes, then trims states that cannot
    /// reach acceptance. The result is the unique minimal automaton for the
    /// language (up to state naming).
    pub fn minimize(&self, budget: StateBudget) -> Result<TraceAutomaton, Error> {
        let dfa = Dfa::determinize(self, budget)?;
        Ok(dfa.minimize().into_trimmed_automaton())
    }

    /// Serializes in the automaton file format using the current state names.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str("alphabet: ");
        out.push_str(
            &self
                .alphabet
                .symbols()
                .iter()
                .map(|s| s.name())
                .collect::<Vec<_>>()
                .join(", "),
        );
        out.push('\n');
        out.push_str("states: ");
        out.push_str(&self.state_names.join(", "));
        out.push('\n');
        out.push_str(&format!("initial: {}\n", self.state_names[self.initial]));
        out.push_str("accepting:");
        let acc: Vec<&str> = self
            .accepting
            .iter()
            .map(|&s| self.state_names[s].as_str())
            .collect();
        if !acc.is_empty() {
            out.push(' ');
            out.push_str(&acc.join(", "));
        }
        out.push('\n');
        let mut lines: Vec<String> = self
            .edges()
            .iter()
            .map(|&(from, sym, to)| {
                format!(
                    "{} -{}-> {}",
                    self.state_names[from],
                    self.alphabet.symbol(sym).name(),
                    self.state_names[to]
                )
            })
            .collect();
        lines.sort();
        for line in lines {
            out.push_str(&line);
            out.push('\n');
        }
        out
    }

    /// Canonical textual form: minimize, rename states q0..qn in BFS
    /// discovery order (symbols in alphabet order), serialize with sorted
    /// lines. Byte-identical for language-equivalent inputs.
    pub fn canonical_text(&self, budget: StateBudget) -> Result<String, Error> {
        let minimal = self.minimize(budget)?;
        Ok(minimal.renamed_bfs().serialize())
    }

    /// Renames states q0..qn in BFS discovery order from the initial state,
    /// exploring symbols in alphabet order.
    fn renamed_bfs(&self) -> TraceAutomaton {
        let n = self.state_count();
        let mut order: Vec<Option<usize>> = vec![None; n];
        let mut queue = std::collections::VecDeque::new();
        let mut next_id = 0usize;
        order[self.initial] = Some(next_id);
        next_id += 1;
        queue.push_back(self.initial);
        while let Some(s) = queue.pop_front() {
            for sym in 0..self.alphabet.len() {
                for &to in &self.transitions[s][sym] {
                    if order[to].is_none() {
                        order[to] = Some(next_id);
                        next_id += 1;
                        queue.push_back(to);
                    }
                }
            }
        }
        // Unreachable states keep stable ids after the reachable ones.
        for slot in order.iter_mut() {
            if slot.is_none() {
                *slot = Some(next_id);
                next_id += 1;
            }
        }
        let map: Vec<usize> = order.into_iter().map(|o| o.unwrap()).collect();
        let state_names = (0..n).map(|i| format!("q{i}")).collect();
        let accepting = self.accepting.iter().map(|&s| map[s]).collect();
        let edges = self
            .edges()
            .into_iter()
            .map(|(f, sym, t)| (map[f], sym, map[t]))
            .collect();
        TraceAutomaton::new(self.alphabet.clone(), state_names, map[self.initial], accepting, edges)
            .expect("renaming preserves validity")
    }

    pub(crate) fn transitions_from(&self, state: StateId, sym: SymbolId) -> &BTreeSet<StateId> {
        &self.transitions[state][sym]
    }
}
