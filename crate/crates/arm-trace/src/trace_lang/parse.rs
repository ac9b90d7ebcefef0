//! Parser for the automaton file format:
//!
//! ```text
//! alphabet: a, b, c
//! states: q0, q1
//! initial: q0
//! accepting: q1
//! q0 -a-> q1
//! ```
//!
//! `#` starts a comment; blank lines are ignored. Syntax errors report the
//! line and column; semantic errors (undeclared states or symbols) are
//! reported separately.

use std::collections::BTreeSet;

use super::{Alphabet, EventSymbol, TraceAutomaton};
use crate::error::Error;

struct Line<'a> {
    number: usize,
    text: &'a str,
}

fn content_lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let body = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let trimmed = body.trim();
            if trimmed.is_empty() {
                None
            } else {
                Some(Line {
                    number: i + 1,
                    text: trimmed,
                })
            }
        })
        .collect()
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Expects `key:` at the start of the line and returns the remainder.
fn header<'a>(line: &Line<'a>, key: &str) -> Result<&'a str, Error> {
    let prefix = format!("{key}:");
    line.text.strip_prefix(&prefix).ok_or_else(|| {
        syntax(
            line.number,
            1,
            format!("expected `{key}:` header, found `{}`", line.text),
        )
    })
}

fn comma_list(text: &str) -> Vec<&str> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect()
}

/// Parses and validates an automaton from text.
pub fn parse_automaton(text: &str) -> Result<TraceAutomaton, Error> {
    let lines = content_lines(text);
    if lines.len() < 4 {
        return Err(syntax(
            lines.last().map(|l| l.number).unwrap_or(1),
            1,
            "expected alphabet, states, initial, and accepting headers",
        ));
    }

    let alphabet_names = comma_list(header(&lines[0], "alphabet")?);
    let alphabet = Alphabet::from_names(alphabet_names)?;

    let state_names: Vec<String> = comma_list(header(&lines[1], "states")?)
        .into_iter()
        .map(String::from)
        .collect();
    if state_names.is_empty() {
        return Err(syntax(lines[1].number, 1, "states list must be non-empty"));
    }
    for name in &state_names {
        // state names share the token rules of event symbols
        EventSymbol::new(name.clone())?;
    }
    let state_id = |name: &str| state_names.iter().position(|s| s == name);

    let initial_name = header(&lines[2], "initial")?.trim();
    if initial_name.is_empty() {
        return Err(syntax(lines[2].number, 1, "missing initial state"));
    }
    let initial = state_id(initial_name).ok_or_else(|| {
        Error::semantic(format!("initial state `{initial_name}` is not declared"))
    })?;

    let mut accepting = BTreeSet::new();
    for name in comma_list(header(&lines[3], "accepting")?) {
        let id = state_id(name)
            .ok_or_else(|| Error::semantic(format!("accepting state `{name}` is not declared")))?;
        accepting.insert(id);
    }

    let mut edges = Vec::new();
    for line in &lines[4..] {
        let (from_name, rest) = line
            .text
            .split_once(" -")
            .ok_or_else(|| syntax(line.number, 1, "expected transition `state -symbol-> state`"))?;
        let (sym_name, to_name) = rest.split_once("-> ").ok_or_else(|| {
            syntax(
                line.number,
                from_name.len() + 2,
                "expected `-symbol->` arrow in transition",
            )
        })?;
        let from_name = from_name.trim();
        let sym_name = sym_name.trim();
        let to_name = to_name.trim();
        let from = state_id(from_name).ok_or_else(|| {
            Error::semantic(format!(
                "transition at line {} uses undeclared state `{from_name}`",
                line.number
            ))
        })?;
        let to = state_id(to_name).ok_or_else(|| {
            Error::semantic(format!(
                "transition at line {} uses undeclared state `{to_name}`",
                line.number
            ))
        })?;
        let sym = alphabet.lookup(sym_name).ok_or_else(|| {
            Error::semantic(format!(
                "transition at line {} uses undeclared symbol `{sym_name}`",
                line.number
            ))
        })?;
        edges.push((from, sym, to));
    }

    TraceAutomaton::new(alphabet, state_names, initial, accepting, edges)
}
