//! Emergent-behavior extraction from observed trace logs.
//!
//! An observed trace is emergent when the implementation model does not
//! accept it. Emergent traces are attributed to the development phase where
//! the gap originated, the extracted set is lifted to a language (via the
//! prefix-tree acceptor) and classified against the three case formulas, and
//! the chain models are decomposed into concrete and extra parts.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::arm_relations::ModelChain;
use crate::error::Error;
use crate::trace_lang::{
    Alphabet, CombineKind, Emptiness, StateBudget, Trace, TraceAutomaton,
};

/// An observed run log: an ordered multiset of traces over one alphabet.
/// Duplicates are preserved in storage; set semantics deduplicate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceLog {
    traces: Vec<Trace>,
    source: String,
}

impl TraceLog {
    pub fn new(traces: Vec<Trace>, source: impl Into<String>) -> Self {
        TraceLog {
            traces,
            source: source.into(),
        }
    }

    pub fn traces(&self) -> &[Trace] {
        &self.traces
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Multiset size.
    pub fn len(&self) -> usize {
        self.traces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.traces.is_empty()
    }

    /// Deduplicated trace set.
    pub fn trace_set(&self) -> BTreeSet<Trace> {
        self.traces.iter().cloned().collect()
    }
}

/// Parses the trace-log format: optional `alphabet: ...` header, one trace
/// per line with whitespace-separated events, `#` comments, blank lines
/// ignored, and a line containing only `-` for the empty trace.
pub fn parse_log(text: &str, alphabet: &Alphabet, source: &str) -> Result<TraceLog, Error> {
    let mut traces = Vec::new();
    let mut first_content = true;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let body = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let trimmed = body.trim();
        if trimmed.is_empty() {
            continue;
        }
        if first_content && trimmed.starts_with("alphabet:") {
            first_content = false;
            let declared: Vec<&str> = trimmed["alphabet:".len()..]
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .collect();
            let expected: Vec<&str> = alphabet.symbols().iter().map(|s| s.name()).collect();
            if declared != expected {
                return Err(Error::AlphabetMismatch {
                    left: expected.join(","),
                    right: declared.join(","),
                });
            }
            continue;
        }
        first_content = false;
        if trimmed == "-" {
            traces.push(Trace::empty());
            continue;
        }
        let mut events = Vec::new();
        for tok in trimmed.split_whitespace() {
            let id = alphabet.lookup(tok).ok_or_else(|| {
                Error::foreign(tok, format!("log line {line_no}"))
            })?;
            events.push(id);
        }
        traces.push(Trace::new(events));
    }
    Ok(TraceLog::new(traces, source))
}

/// Membership of one trace in each phase model's language.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MembershipVector {
    pub in_rbt: bool,
    pub in_dbt: bool,
    pub in_ibt: bool,
}

/// The phase where an observed trace's gap originated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum OriginPhase {
    RequirementsGap,
    DesignGap,
    ImplementationGap,
    NotEmergent,
}

impl fmt::Display for OriginPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            OriginPhase::RequirementsGap => "requirements-gap",
            OriginPhase::DesignGap => "design-gap",
            OriginPhase::ImplementationGap => "implementation-gap",
            OriginPhase::NotEmergent => "not-emergent",
        };
        f.write_str(s)
    }
}

impl OriginPhase {
    pub fn parse(text: &str) -> Option<OriginPhase> {
        match text {
            "requirements-gap" => Some(OriginPhase::RequirementsGap),
            "design-gap" => Some(OriginPhase::DesignGap),
            "implementation-gap" => Some(OriginPhase::ImplementationGap),
            "not-emergent" => Some(OriginPhase::NotEmergent),
            _ => None,
        }
    }
}

/// Which case formula the extracted emergent language satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseLabel {
    Case1,
    Case2,
    Case3,
    NoEmergence,
    Unclassified,
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseLabel::Case1 => "case-1",
            CaseLabel::Case2 => "case-2",
            CaseLabel::Case3 => "case-3",
            CaseLabel::NoEmergence => "no-emergence",
            CaseLabel::Unclassified => "unclassified",
        };
        f.write_str(s)
    }
}

/// Raw value of every conjunct of the three case formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CaseConjuncts {
    // case 1: the emergent language strictly overlaps the required one
    pub rm_inter_ebt_nonempty: bool,
    pub rm_not_subset_ebt: bool,
    pub ebt_not_subset_rm: bool,
    // case 2: refinement of the requirements, strict overlap with the design
    pub ebt_subset_rm: bool,
    pub dm_inter_ebt_nonempty: bool,
    pub dm_not_subset_ebt: bool,
    pub ebt_not_subset_dm: bool,
    // case 3: refinement of the design, strict overlap with the implementation
    pub ebt_subset_dm: bool,
    pub im_inter_ebt_nonempty: bool,
    pub im_not_subset_ebt: bool,
    pub ebt_not_subset_im: bool,
}

impl CaseConjuncts {
    pub fn case1(&self) -> bool {
        self.rm_inter_ebt_nonempty && self.rm_not_subset_ebt && self.ebt_not_subset_rm
    }

    pub fn case2(&self) -> bool {
        self.ebt_subset_rm
            && self.dm_inter_ebt_nonempty
            && self.dm_not_subset_ebt
            && self.ebt_not_subset_dm
    }

    pub fn case3(&self) -> bool {
        self.ebt_subset_dm
            && self.im_inter_ebt_nonempty
            && self.im_not_subset_ebt
            && self.ebt_not_subset_im
    }
}

/// Case label plus the raw conjunct values it was derived from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CaseClassification {
    pub label: CaseLabel,
    pub conjuncts: CaseConjuncts,
}

/// Full analysis of one observed log against a model chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmergentReport {
    /// Multiset size of the log.
    pub observed_count: usize,
    /// Deduplicated observed traces the implementation model rejects.
    pub emergent_traces: BTreeSet<Trace>,
    /// Per observed trace (deduplicated): memberships and origin phase.
    pub per_trace: BTreeMap<Trace, (MembershipVector, OriginPhase)>,
    pub case: CaseClassification,
    /// True when the observed set is not contained in the implementation
    /// language, i.e. the refinement guarantee failed at runtime.
    pub guarantee_violated: bool,
}

/// Concrete/extra decomposition of the design and implementation models,
/// plus the observed unspecified traces attributed to each upstream phase.
#[derive(Debug, Clone)]
pub struct ExtendedDecomposition {
    /// Design behavior also present in the requirements (DBT ∩ RBT).
    pub concrete_d: TraceAutomaton,
    /// Design behavior absent from the requirements (DBT \ RBT).
    pub extra_d: TraceAutomaton,
    /// Implementation behavior also present in the design (IBT ∩ DBT).
    pub concrete_i: TraceAutomaton,
    /// Implementation behavior absent from the design (IBT \ DBT).
    pub extra_i: TraceAutomaton,
    /// Observed emergent traces whose gap originated at requirements level.
    pub uobt_r_observed: BTreeSet<Trace>,
    /// Observed emergent traces whose gap originated at design level.
    pub uobt_d_observed: BTreeSet<Trace>,
}

/// Evaluates the trace against all three phase models.
pub fn membership_vector(t: &Trace, chain: &ModelChain) -> Result<MembershipVector, Error> {
    Ok(MembershipVector {
        in_rbt: chain.rm().accepts(t)?,
        in_dbt: chain.dm().accepts(t)?,
        in_ibt: chain.im().accepts(t)?,
    })
}

/// Attributes a trace to the earliest phase whose model fails to cover it:
/// not in the requirements → requirements gap; in the requirements but not
/// the design → design gap; in both but not the implementation →
/// implementation gap; accepted by the implementation → not emergent.
pub fn per_trace_origin(t: &Trace, chain: &ModelChain) -> Result<OriginPhase, Error> {
    let v = membership_vector(t, chain)?;
    Ok(origin_from_vector(v))
}

fn origin_from_vector(v: MembershipVector) -> OriginPhase {
    if v.in_ibt {
        OriginPhase::NotEmergent
    } else if !v.in_rbt {
        OriginPhase::RequirementsGap
    } else if !v.in_dbt {
        OriginPhase::DesignGap
    } else {
        OriginPhase::ImplementationGap
    }
}

/// Extracts the emergent trace set from a log, attributes origins, and
/// classifies the emergent language against the case formulas.
pub fn extract_emergent(
    log: &TraceLog,
    chain: &ModelChain,
    budget: StateBudget,
) -> Result<EmergentReport, Error> {
    let observed = log.trace_set();
    let mut per_trace = BTreeMap::new();
    let mut emergent_traces = BTreeSet::new();
    for t in &observed {
        let v = membership_vector(t, chain)?;
        let origin = origin_from_vector(v);
        if origin != OriginPhase::NotEmergent {
            emergent_traces.insert(t.clone());
        }
        per_trace.insert(t.clone(), (v, origin));
    }
    let ebt = TraceAutomaton::from_traces(&emergent_traces, chain.alphabet().clone())?;
    let case = localize_case(&ebt, chain, budget)?;
    Ok(EmergentReport {
        observed_count: log.len(),
        guarantee_violated: !emergent_traces.is_empty(),
        emergent_traces,
        per_trace,
        case,
    })
}

/// Evaluates the three case formulas literally over the emergent language
/// and each phase language, returning the first satisfied case (1, 2, 3)
/// together with every raw conjunct.
pub fn localize_case(
    ebt: &TraceAutomaton,
    chain: &ModelChain,
    budget: StateBudget,
) -> Result<CaseClassification, Error> {
    chain.alphabet().require_same(ebt.alphabet())?;

    if ebt.is_empty(budget)?.is_empty() {
        return Ok(CaseClassification {
            label: CaseLabel::NoEmergence,
            conjuncts: CaseConjuncts::default(),
        });
    }

    let nonempty_intersection = |m: &TraceAutomaton| -> Result<bool, Error> {
        let inter = TraceAutomaton::combine(CombineKind::Intersection, m, ebt, budget)?;
        Ok(matches!(inter.is_empty(budget)?, Emptiness::NonEmpty(_)))
    };
    let subset = |small: &TraceAutomaton, big: &TraceAutomaton| -> Result<bool, Error> {
        Ok(TraceAutomaton::includes(big, small, budget)?.holds())
    };

    let conjuncts = CaseConjuncts {
        rm_inter_ebt_nonempty: nonempty_intersection(chain.rm())?,
        rm_not_subset_ebt: !subset(chain.rm(), ebt)?,
        ebt_not_subset_rm: !subset(ebt, chain.rm())?,
        ebt_subset_rm: subset(ebt, chain.rm())?,
        dm_inter_ebt_nonempty: nonempty_intersection(chain.dm())?,
        dm_not_subset_ebt: !subset(chain.dm(), ebt)?,
        ebt_not_subset_dm: !subset(ebt, chain.dm())?,
        ebt_subset_dm: subset(ebt, chain.dm())?,
        im_inter_ebt_nonempty: nonempty_intersection(chain.im())?,
        im_not_subset_ebt: !subset(chain.im(), ebt)?,
        ebt_not_subset_im: !subset(ebt, chain.im())?,
    };

    let label = if conjuncts.case1() {
        CaseLabel::Case1
    } else if conjuncts.case2() {
        CaseLabel::Case2
    } else if conjuncts.case3() {
        CaseLabel::Case3
    } else {
        CaseLabel::Unclassified
    };

    Ok(CaseClassification { label, conjuncts })
}

/// Splits the design and implementation models into the part covered by the
/// previous phase and the extra part, and buckets the observed emergent
/// traces by origin. The implementation model is treated as pure code, so no
/// unspecified observed traces are attributed to it.
pub fn decompose_extended(
    chain: &ModelChain,
    report: &EmergentReport,
    budget: StateBudget,
) -> Result<ExtendedDecomposition, Error> {
    let concrete_d =
        TraceAutomaton::combine(CombineKind::Intersection, chain.dm(), chain.rm(), budget)?;
    let extra_d =
        TraceAutomaton::combine(CombineKind::Difference, chain.dm(), chain.rm(), budget)?;
    let concrete_i =
        TraceAutomaton::combine(CombineKind::Intersection, chain.im(), chain.dm(), budget)?;
    let extra_i =
        TraceAutomaton::combine(CombineKind::Difference, chain.im(), chain.dm(), budget)?;

    let mut uobt_r_observed = BTreeSet::new();
    let mut uobt_d_observed = BTreeSet::new();
    for (t, (_, origin)) in &report.per_trace {
        match origin {
            OriginPhase::RequirementsGap => {
                uobt_r_observed.insert(t.clone());
            }
            OriginPhase::DesignGap => {
                uobt_d_observed.insert(t.clone());
            }
            _ => {}
        }
    }

    Ok(ExtendedDecomposition {
        concrete_d,
        extra_d,
        concrete_i,
        extra_i,
        uobt_r_observed,
        uobt_d_observed,
    })
}
