//! Evolution-step classification and refinement-chain checking.
//!
//! An evolution step from `prev` to `next` is judged by comparing the two
//! accepted languages:
//!
//! * abstraction — L(prev) ⊆ L(next)
//! * refinement — L(next) ⊆ L(prev)
//! * total change — L(prev) ∩ L(next) = ∅
//! * strict evolution — overlapping but incomparable languages
//!
//! A three-phase chain (requirements, design, implementation) holds when
//! each phase refines its predecessor; that is the precondition under which
//! runtime observation cannot produce unspecified traces.

use std::fmt;

use crate::error::Error;
use crate::trace_lang::{
    CombineKind, Emptiness, Inclusion, StateBudget, TraceAutomaton, Witness,
};

/// Single canonical label for an evolution step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvolutionClass {
    Equivalent,
    Refinement,
    Abstraction,
    TotalChange,
    StrictEvolution,
}

impl fmt::Display for EvolutionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            EvolutionClass::Equivalent => "equivalent",
            EvolutionClass::Refinement => "refinement",
            EvolutionClass::Abstraction => "abstraction",
            EvolutionClass::TotalChange => "total-change",
            EvolutionClass::StrictEvolution => "strict-evolution",
        };
        f.write_str(s)
    }
}

/// Witness traces backing an [`EvolutionReport`]: a trace only the previous
/// model accepts, a trace only the next model accepts, and a shared trace.
/// Each is present exactly when the corresponding set is non-empty.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EvolutionEvidence {
    pub prev_only: Option<Witness>,
    pub next_only: Option<Witness>,
    pub shared: Option<Witness>,
}

/// Which evolution relations hold between two models, with evidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvolutionReport {
    pub abstraction_holds: bool,
    pub refinement_holds: bool,
    pub total_change_holds: bool,
    pub strict_evolution_holds: bool,
    pub canonical: EvolutionClass,
    pub evidence: EvolutionEvidence,
}

/// The triple of phase models over one shared alphabet.
#[derive(Debug, Clone)]
pub struct ModelChain {
    rm: TraceAutomaton,
    dm: TraceAutomaton,
    im: TraceAutomaton,
}

impl ModelChain {
    pub fn new(
        rm: TraceAutomaton,
        dm: TraceAutomaton,
        im: TraceAutomaton,
    ) -> Result<Self, Error> {
        rm.alphabet().require_same(dm.alphabet())?;
        rm.alphabet().require_same(im.alphabet())?;
        Ok(ModelChain { rm, dm, im })
    }

    pub fn rm(&self) -> &TraceAutomaton {
        &self.rm
    }

    pub fn dm(&self) -> &TraceAutomaton {
        &self.dm
    }

    pub fn im(&self) -> &TraceAutomaton {
        &self.im
    }

    pub fn alphabet(&self) -> &crate::trace_lang::Alphabet {
        self.rm.alphabet()
    }
}

/// Per-step verdicts for the three-phase chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainReport {
    pub dm_refines_rm: Inclusion,
    pub im_refines_dm: Inclusion,
    pub chain_holds: bool,
}

/// Computes every evolution relation between `prev` and `next` and the
/// canonical class under the precedence
/// equivalent > refinement > abstraction > total change > strict evolution.
pub fn classify_evolution(
    prev: &TraceAutomaton,
    next: &TraceAutomaton,
    budget: StateBudget,
) -> Result<EvolutionReport, Error> {
    prev.alphabet().require_same(next.alphabet())?;

    let prev_in_next = TraceAutomaton::includes(next, prev, budget)?;
    let next_in_prev = TraceAutomaton::includes(prev, next, budget)?;
    let shared_lang = TraceAutomaton::combine(CombineKind::Intersection, prev, next, budget)?;
    let shared = match shared_lang.is_empty(budget)? {
        Emptiness::Empty => None,
        Emptiness::NonEmpty(w) => Some(w),
    };

    let abstraction_holds = prev_in_next.holds();
    let refinement_holds = next_in_prev.holds();
    let total_change_holds = shared.is_none();
    let strict_evolution_holds = !abstraction_holds && !refinement_holds && !total_change_holds;

    let canonical = if abstraction_holds && refinement_holds {
        EvolutionClass::Equivalent
    } else if refinement_holds {
        EvolutionClass::Refinement
    } else if abstraction_holds {
        EvolutionClass::Abstraction
    } else if total_change_holds {
        EvolutionClass::TotalChange
    } else {
        EvolutionClass::StrictEvolution
    };

    let evidence = EvolutionEvidence {
        prev_only: prev_in_next.witness().cloned(),
        next_only: next_in_prev.witness().cloned(),
        shared,
    };

    Ok(EvolutionReport {
        abstraction_holds,
        refinement_holds,
        total_change_holds,
        strict_evolution_holds,
        canonical,
        evidence,
    })
}

/// Verifies both refinement steps of the chain. A failing step carries the
/// shortest trace the evolved model accepts but its predecessor does not.
pub fn check_chain(chain: &ModelChain, budget: StateBudget) -> Result<ChainReport, Error> {
    let dm_refines_rm = TraceAutomaton::includes(chain.rm(), chain.dm(), budget)?;
    let im_refines_dm = TraceAutomaton::includes(chain.dm(), chain.im(), budget)?;
    let chain_holds = dm_refines_rm.holds() && im_refines_dm.holds();
    Ok(ChainReport {
        dm_refines_rm,
        im_refines_dm,
        chain_holds,
    })
}
