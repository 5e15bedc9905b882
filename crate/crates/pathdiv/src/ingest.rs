//! Line-oriented source formats.
//!
//! All four formats are UTF-8 with LF line endings. Blank lines and lines
//! whose first non-blank character is `#` are ignored; tokens are separated by
//! whitespace.
//!
//! | file     | one line holds                                  |
//! |----------|-------------------------------------------------|
//! | roster   | one AS number                                   |
//! | routes   | an AS_PATH, collector side first, origin last   |
//! | policies | `<as> import <as>` or `<as> export <as>`        |
//! | traces   | AS hops, monitor first, destination last        |
//!
//! Paths and traces have runs of the same AS collapsed. A line that still
//! visits an AS twice is dropped and counted, not rejected.

use std::fmt::Write as _;

use pathdiv_core::sources::{PolicyKind, PolicyRule, Roster, RouteRecord, TraceRecord};
use pathdiv_core::{AsNumber, Error};

use crate::FormatError;

/// Records read from a route or trace file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parsed<T> {
    pub records: Vec<T>,
    /// Lines dropped because the path loops.
    pub dropped_loops: usize,
}

/// `(line number, tokens with 1-based columns)` for every content line.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<(usize, &str)>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            return None;
        }
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(pos),
                (true, Some(s)) => {
                    tokens.push((line[..s].chars().count() + 1, &line[s..pos]));
                    start = None;
                }
                _ => {}
            }
        }
        Some((i + 1, tokens))
    })
}

fn as_number(line: usize, column: usize, token: &str) -> Result<AsNumber, FormatError> {
    token.parse().map_err(|_| FormatError::BadAsNumber { line, column, token: token.to_owned() })
}

pub fn parse_roster(text: &str) -> Result<Roster, FormatError> {
    let mut members = Vec::new();
    for (line, tokens) in content_lines(text) {
        match tokens.as_slice() {
            [(column, token)] => members.push(as_number(line, *column, token)?),
            _ => return Err(FormatError::malformed(line, "expected exactly one AS number")),
        }
    }
    Ok(Roster::new(members)?)
}

fn parse_paths<T>(
    text: &str,
    build: impl Fn(Vec<AsNumber>) -> Result<T, Error>,
) -> Result<Parsed<T>, FormatError> {
    let mut records = Vec::new();
    let mut dropped_loops = 0;
    for (line, tokens) in content_lines(text) {
        let hops = tokens
            .iter()
            .map(|&(column, token)| as_number(line, column, token))
            .collect::<Result<Vec<_>, _>>()?;
        match build(hops) {
            Ok(r) => records.push(r),
            Err(Error::LoopedPath) => dropped_loops += 1,
            Err(e) => return Err(FormatError::malformed(line, e.to_string())),
        }
    }
    Ok(Parsed { records, dropped_loops })
}

pub fn parse_routes(text: &str) -> Result<Parsed<RouteRecord>, FormatError> {
    parse_paths(text, RouteRecord::new)
}

pub fn parse_traces(text: &str) -> Result<Parsed<TraceRecord>, FormatError> {
    parse_paths(text, TraceRecord::new)
}

pub fn parse_policies(text: &str) -> Result<Vec<PolicyRule>, FormatError> {
    let mut rules = Vec::new();
    for (line, tokens) in content_lines(text) {
        let [(sc, subject), (_, keyword), (pc, peer)] = tokens.as_slice() else {
            return Err(FormatError::malformed(line, "expected \"<as> import|export <as>\""));
        };
        let kind = match *keyword {
            "import" => PolicyKind::Import,
            "export" => PolicyKind::Export,
            other => {
                return Err(FormatError::malformed(line, format!("unknown keyword {other:?}")));
            }
        };
        let subject = as_number(line, *sc, subject)?;
        let peer = as_number(line, *pc, peer)?;
        let rule =
            PolicyRule::new(subject, kind, peer).map_err(|e| FormatError::malformed(line, e.to_string()))?;
        rules.push(rule);
    }
    Ok(rules)
}

fn join_line(out: &mut String, hops: &[AsNumber]) {
    for (i, v) in hops.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        write!(out, "{v}").unwrap();
    }
    out.push('\n');
}

pub fn write_roster(roster: &Roster) -> String {
    roster.iter().map(|v| format!("{v}\n")).collect()
}

pub fn write_routes(records: &[RouteRecord]) -> String {
    let mut out = String::new();
    for r in records {
        join_line(&mut out, r.path());
    }
    out
}

pub fn write_traces(records: &[TraceRecord]) -> String {
    let mut out = String::new();
    for r in records {
        join_line(&mut out, r.hops());
    }
    out
}

pub fn write_policies(rules: &[PolicyRule]) -> String {
    rules.iter().map(|r| format!("{} {} {}\n", r.subject(), r.kind().keyword(), r.peer())).collect()
}
