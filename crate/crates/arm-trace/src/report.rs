//! Report documents: stable machine-readable JSON plus a human text form,
//! both carrying the same information.

use serde::{Deserialize, Serialize};

use crate::arm_relations::{ChainReport, EvolutionReport};
use crate::emergence::{EmergentReport, ExtendedDecomposition};
use crate::trace_lang::{Alphabet, Inclusion, StateBudget, TraceAutomaton, Witness};
use crate::Error;

pub const SCHEMA_VERSION: u32 = 1;

/// Output format selector for the CLI and report renderers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ReportDoc<T> {
    pub schema_version: u32,
    pub kind: String,
    pub body: T,
}

impl<T: Serialize> ReportDoc<T> {
    pub fn new(kind: &str, body: T) -> Self {
        ReportDoc {
            schema_version: SCHEMA_VERSION,
            kind: kind.to_string(),
            body,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization cannot fail");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct WitnessDto {
    pub trace: String,
    pub kind: String,
}

fn witness_dto(w: &Witness, alphabet: &Alphabet) -> WitnessDto {
    WitnessDto {
        trace: w.trace.render(alphabet),
        kind: match w.kind {
            crate::trace_lang::WitnessKind::AcceptedByLeftNotRight => {
                "accepted-by-left-not-right".to_string()
            }
            crate::trace_lang::WitnessKind::AcceptedSample => "accepted-sample".to_string(),
        },
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct InclusionDto {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDto>,
}

fn inclusion_dto(i: &Inclusion, alphabet: &Alphabet) -> InclusionDto {
    InclusionDto {
        holds: i.holds(),
        witness: i.witness().map(|w| witness_dto(w, alphabet)),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct EvolutionDto {
    pub abstraction_holds: bool,
    pub refinement_holds: bool,
    pub total_change_holds: bool,
    pub strict_evolution_holds: bool,
    pub canonical: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prev_only_witness: Option<WitnessDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub next_only_witness: Option<WitnessDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shared_witness: Option<WitnessDto>,
}

pub fn evolution_dto(r: &EvolutionReport, alphabet: &Alphabet) -> EvolutionDto {
    EvolutionDto {
        abstraction_holds: r.abstraction_holds,
        refinement_holds: r.refinement_holds,
        total_change_holds: r.total_change_holds,
        strict_evolution_holds: r.strict_evolution_holds,
        canonical: r.canonical.to_string(),
        prev_only_witness: r.evidence.prev_only.as_ref().map(|w| witness_dto(w, alphabet)),
        next_only_witness: r.evidence.next_only.as_ref().map(|w| witness_dto(w, alphabet)),
        shared_witness: r.evidence.shared.as_ref().map(|w| witness_dto(w, alphabet)),
    }
}

pub fn evolution_text(r: &EvolutionReport, alphabet: &Alphabet) -> String {
    let mut out = String::new();
    out.push_str(&format!("canonical class: {}\n", r.canonical));
    out.push_str(&format!("  abstraction:      {}\n", r.abstraction_holds));
    out.push_str(&format!("  refinement:       {}\n", r.refinement_holds));
    out.push_str(&format!("  total change:     {}\n", r.total_change_holds));
    out.push_str(&format!("  strict evolution: {}\n", r.strict_evolution_holds));
    if let Some(w) = &r.evidence.prev_only {
        out.push_str(&format!("  only in previous model: {}\n", w.trace.render(alphabet)));
    }
    if let Some(w) = &r.evidence.next_only {
        out.push_str(&format!("  only in next model:     {}\n", w.trace.render(alphabet)));
    }
    if let Some(w) = &r.evidence.shared {
        out.push_str(&format!("  shared trace:           {}\n", w.trace.render(alphabet)));
    }
    out
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ChainDto {
    pub dm_refines_rm: InclusionDto,
    pub im_refines_dm: InclusionDto,
    pub chain_holds: bool,
}

pub fn chain_dto(r: &ChainReport, alphabet: &Alphabet) -> ChainDto {
    ChainDto {
        dm_refines_rm: inclusion_dto(&r.dm_refines_rm, alphabet),
        im_refines_dm: inclusion_dto(&r.im_refines_dm, alphabet),
        chain_holds: r.chain_holds,
    }
}

pub fn chain_text(r: &ChainReport, alphabet: &Alphabet) -> String {
    let step = |name: &str, i: &Inclusion| match i.witness() {
        None => format!("  {name}: holds\n"),
        Some(w) => format!(
            "  {name}: FAILS (extra trace: {})\n",
            w.trace.render(alphabet)
        ),
    };
    let mut out = String::new();
    out.push_str(&format!(
        "refinement chain: {}\n",
        if r.chain_holds { "holds" } else { "VIOLATED" }
    ));
    out.push_str(&step("design refines requirements", &r.dm_refines_rm));
    out.push_str(&step("implementation refines design", &r.im_refines_dm));
    out
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TraceVerdictDto {
    pub trace: String,
    pub in_rbt: bool,
    pub in_dbt: bool,
    pub in_ibt: bool,
    pub origin: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CaseDto {
    pub label: String,
    pub case1_satisfied: bool,
    pub case2_satisfied: bool,
    pub case3_satisfied: bool,
    pub conjuncts: ConjunctsDto,
    /// Case 3 rests on implementation models that cover more than the code;
    /// flagged because an automaton model cannot express that distinction.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub caveat: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ConjunctsDto {
    pub rm_inter_ebt_nonempty: bool,
    pub rm_not_subset_ebt: bool,
    pub ebt_not_subset_rm: bool,
    pub ebt_subset_rm: bool,
    pub dm_inter_ebt_nonempty: bool,
    pub dm_not_subset_ebt: bool,
    pub ebt_not_subset_dm: bool,
    pub ebt_subset_dm: bool,
    pub im_inter_ebt_nonempty: bool,
    pub im_not_subset_ebt: bool,
    pub ebt_not_subset_im: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct EmergentDto {
    pub observed_count: usize,
    pub emergent_traces: Vec<String>,
    pub per_trace: Vec<TraceVerdictDto>,
    pub case: CaseDto,
    pub guarantee_violated: bool,
}

pub fn emergent_dto(r: &EmergentReport, alphabet: &Alphabet) -> EmergentDto {
    let c = &r.case.conjuncts;
    let caveat = if r.case.label == crate::emergence::CaseLabel::Case3 {
        Some(
            "case 3 presumes an implementation model covering more than pure code; \
             the automaton model cannot distinguish that"
                .to_string(),
        )
    } else {
        None
    };
    EmergentDto {
        observed_count: r.observed_count,
        emergent_traces: r
            .emergent_traces
            .iter()
            .map(|t| t.render(alphabet))
            .collect(),
        per_trace: r
            .per_trace
            .iter()
            .map(|(t, (v, origin))| TraceVerdictDto {
                trace: t.render(alphabet),
                in_rbt: v.in_rbt,
                in_dbt: v.in_dbt,
                in_ibt: v.in_ibt,
                origin: origin.to_string(),
            })
            .collect(),
        case: CaseDto {
            label: r.case.label.to_string(),
            case1_satisfied: c.case1(),
            case2_satisfied: c.case2(),
            case3_satisfied: c.case3(),
            conjuncts: ConjunctsDto {
                rm_inter_ebt_nonempty: c.rm_inter_ebt_nonempty,
                rm_not_subset_ebt: c.rm_not_subset_ebt,
                ebt_not_subset_rm: c.ebt_not_subset_rm,
                ebt_subset_rm: c.ebt_subset_rm,
                dm_inter_ebt_nonempty: c.dm_inter_ebt_nonempty,
                dm_not_subset_ebt: c.dm_not_subset_ebt,
                ebt_not_subset_dm: c.ebt_not_subset_dm,
                ebt_subset_dm: c.ebt_subset_dm,
                im_inter_ebt_nonempty: c.im_inter_ebt_nonempty,
                im_not_subset_ebt: c.im_not_subset_ebt,
                ebt_not_subset_im: c.ebt_not_subset_im,
            },
            caveat,
        },
        guarantee_violated: r.guarantee_violated,
    }
}

pub fn emergent_text(r: &EmergentReport, alphabet: &Alphabet) -> String {
    let mut out = String::new();
    out.push_str(&format!("observed traces: {}\n", r.observed_count));
    out.push_str(&format!(
        "refinement guarantee violated: {}\n",
        r.guarantee_violated
    ));
    out.push_str(&format!("emergent traces: {}\n", r.emergent_traces.len()));
    for (t, (v, origin)) in &r.per_trace {
        out.push_str(&format!(
            "  {}  [rm:{} dm:{} im:{}]  {}\n",
            t.render(alphabet),
            v.in_rbt as u8,
            v.in_dbt as u8,
            v.in_ibt as u8,
            origin
        ));
    }
    out.push_str(&format!("case classification: {}\n", r.case.label));
    if r.case.label == crate::emergence::CaseLabel::Case3 {
        out.push_str(
            "  note: case 3 presumes an implementation model covering more than pure code\n",
        );
    }
    out
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct DecompositionDto {
    pub concrete_d: String,
    pub extra_d: String,
    pub concrete_i: String,
    pub extra_i: String,
    pub uobt_r_observed: Vec<String>,
    pub uobt_d_observed: Vec<String>,
}

pub fn decomposition_dto(
    d: &ExtendedDecomposition,
    alphabet: &Alphabet,
    budget: StateBudget,
) -> Result<DecompositionDto, Error> {
    let canon = |a: &TraceAutomaton| a.canonical_text(budget);
    Ok(DecompositionDto {
        concrete_d: canon(&d.concrete_d)?,
        extra_d: canon(&d.extra_d)?,
        concrete_i: canon(&d.concrete_i)?,
        extra_i: canon(&d.extra_i)?,
        uobt_r_observed: d.uobt_r_observed.iter().map(|t| t.render(alphabet)).collect(),
        uobt_d_observed: d.uobt_d_observed.iter().map(|t| t.render(alphabet)).collect(),
    })
}

pub fn decomposition_text(dto: &DecompositionDto) -> String {
    let mut out = String::new();
    out.push_str("design model decomposition (concrete part):\n");
    indent(&mut out, &dto.concrete_d);
    out.push_str("design model decomposition (extra part):\n");
    indent(&mut out, &dto.extra_d);
    out.push_str("implementation model decomposition (concrete part):\n");
    indent(&mut out, &dto.concrete_i);
    out.push_str("implementation model decomposition (extra part):\n");
    indent(&mut out, &dto.extra_i);
    out.push_str(&format!(
        "observed requirements-level gaps: {}\n",
        join_or_none(&dto.uobt_r_observed)
    ));
    out.push_str(&format!(
        "observed design-level gaps: {}\n",
        join_or_none(&dto.uobt_d_observed)
    ));
    out
}

fn indent(out: &mut String, block: &str) {
    for line in block.lines() {
        out.push_str("  ");
        out.push_str(line);
        out.push('\n');
    }
}

fn join_or_none(items: &[String]) -> String {
    if items.is_empty() {
        "(none)".to_string()
    } else {
        items.join(", ")
    }
}
