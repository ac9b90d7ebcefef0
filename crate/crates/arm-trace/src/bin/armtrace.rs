//! Thin command-line front end over the library: every subcommand maps to
//! one analysis and prints a text or machine (JSON) report on stdout.
//! Exit codes: 0 = property holds / clean, 1 = property violated or
//! emergence found, 2 = usage or input error, 3 = state budget exceeded.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use arm_trace::arm_relations::{check_chain, classify_evolution, ModelChain};
use arm_trace::emergence::{decompose_extended, extract_emergent, parse_log, OriginPhase};
use arm_trace::report::{self, Format, ReportDoc};
use arm_trace::scenario::{generate, write_bundle, ScenarioConfig};
use arm_trace::trace_lang::{parse_automaton, StateBudget, TraceAutomaton};
use arm_trace::Error;

#[derive(Parser)]
#[command(name = "armtrace", version, about = "Trace-language evolution and emergent-behavior analysis")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,

    /// Cap on states constructed during determinization
    #[arg(long, global = true, default_value_t = 1_000_000)]
    state_budget: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Machine,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Machine => Format::Machine,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify the evolution step from PREV to NEXT
    Classify { prev: PathBuf, next: PathBuf },
    /// Verify the refinement chain RM ⊇ DM ⊇ IM
    Check {
        rm: PathBuf,
        dm: PathBuf,
        im: PathBuf,
    },
    /// Extract emergent behavior from a trace log against a chain
    Analyze {
        rm: PathBuf,
        dm: PathBuf,
        im: PathBuf,
        log: PathBuf,
    },
    /// Decompose the chain into concrete and extra parts
    Decompose {
        rm: PathBuf,
        dm: PathBuf,
        im: PathBuf,
        log: PathBuf,
    },
    /// List accepted traces up to a length bound
    Enumerate {
        aut: PathBuf,
        #[arg(long)]
        max_len: usize,
    },
    /// Generate a synthetic scenario bundle
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        alphabet_size: usize,
        #[arg(long, default_value_t = 4)]
        states: usize,
        #[arg(long, default_value_t = 8)]
        log_size: usize,
        #[arg(long, default_value_t = 6)]
        max_trace_len: usize,
        #[arg(long, default_value_t = 0)]
        inject_requirements: usize,
        #[arg(long, default_value_t = 0)]
        inject_design: usize,
        #[arg(long, default_value_t = 0)]
        inject_implementation: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

enum Failure {
    Input(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

fn read_automaton(path: &Path) -> Result<TraceAutomaton, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_automaton(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_chain(rm: &Path, dm: &Path, im: &Path) -> Result<ModelChain, Failure> {
    let rm = read_automaton(rm)?;
    let dm = read_automaton(dm)?;
    let im = read_automaton(im)?;
    ModelChain::new(rm, dm, im).map_err(Failure::from)
}

fn emit<T: serde::Serialize>(format: Format, kind: &str, dto: T, text: String) {
    match format {
        Format::Text => print!("{text}"),
        Format::Machine => print!("{}", ReportDoc::new(kind, dto).to_json()),
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let budget = StateBudget(cli.state_budget);
    let format: Format = cli.format.into();
    match cli.command {
        Command::Classify { prev, next } => {
            let prev = read_automaton(&prev)?;
            let next = read_automaton(&next)?;
            let report = classify_evolution(&prev, &next, budget)?;
            let alphabet = prev.alphabet();
            emit(
                format,
                "evolution",
                report::evolution_dto(&report, alphabet),
                report::evolution_text(&report, alphabet),
            );
            Ok(0)
        }
        Command::Check { rm, dm, im } => {
            let chain = read_chain(&rm, &dm, &im)?;
            let report = check_chain(&chain, budget)?;
            emit(
                format,
                "chain",
                report::chain_dto(&report, chain.alphabet()),
                report::chain_text(&report, chain.alphabet()),
            );
            Ok(if report.chain_holds { 0 } else { 1 })
        }
        Command::Analyze { rm, dm, im, log } => {
            let chain = read_chain(&rm, &dm, &im)?;
            let text = std::fs::read_to_string(&log)
                .map_err(|e| Failure::Input(format!("{}: {e}", log.display())))?;
            let log = parse_log(&text, chain.alphabet(), &log.display().to_string())
                .map_err(Failure::from)?;
            let report = extract_emergent(&log, &chain, budget)?;
            let clean = report.emergent_traces.is_empty();
            emit(
                format,
                "emergent",
                report::emergent_dto(&report, chain.alphabet()),
                report::emergent_text(&report, chain.alphabet()),
            );
            Ok(if clean { 0 } else { 1 })
        }
        Command::Decompose { rm, dm, im, log } => {
            let chain = read_chain(&rm, &dm, &im)?;
            let text = std::fs::read_to_string(&log)
                .map_err(|e| Failure::Input(format!("{}: {e}", log.display())))?;
            let log = parse_log(&text, chain.alphabet(), &log.display().to_string())
                .map_err(Failure::from)?;
            let report = extract_emergent(&log, &chain, budget)?;
            let decomposition = decompose_extended(&chain, &report, budget)?;
            let dto = report::decomposition_dto(&decomposition, chain.alphabet(), budget)?;
            let text = report::decomposition_text(&dto);
            emit(format, "decomposition", dto, text);
            Ok(0)
        }
        Command::Enumerate { aut, max_len } => {
            let automaton = read_automaton(&aut)?;
            let traces = automaton.enumerate(max_len, budget)?;
            let rendered: Vec<String> = traces
                .iter()
                .map(|t| t.render(automaton.alphabet()))
                .collect();
            match format {
                Format::Text => {
                    for t in &rendered {
                        println!("{t}");
                    }
                }
                Format::Machine => {
                    print!("{}", ReportDoc::new("enumeration", rendered).to_json());
                }
            }
            Ok(0)
        }
        Command::Gen {
            seed,
            alphabet_size,
            states,
            log_size,
            max_trace_len,
            inject_requirements,
            inject_design,
            inject_implementation,
            out,
        } => {
            let mut extra = BTreeMap::new();
            extra.insert(OriginPhase::RequirementsGap, inject_requirements);
            extra.insert(OriginPhase::DesignGap, inject_design);
            extra.insert(OriginPhase::ImplementationGap, inject_implementation);
            let cfg = ScenarioConfig {
                seed,
                alphabet_size,
                states_per_model: states,
                extra_traces_per_phase: extra,
                log_size,
                max_trace_len,
            };
            let scenario = generate(&cfg, budget)?;
            write_bundle(&out, &scenario, &cfg, budget)
                .map_err(|e| Failure::Input(format!("{}: {e}", out.display())))?;
            for w in &scenario.warnings {
                eprintln!("warning: {w}");
            }
            let summary: Vec<String> = vec![
                format!("bundle written to {}", out.display()),
                format!("log traces: {}", scenario.log.len()),
                format!("injected traces: {}", scenario.injected.len()),
            ];
            match format {
                Format::Text => {
                    for line in &summary {
                        println!("{line}");
                    }
                }
                Format::Machine => print!("{}", ReportDoc::new("generated", summary).to_json()),
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
