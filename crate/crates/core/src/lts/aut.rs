//! Aldebaran (`.aut`) reader and writer.
//!
//! ```text
//! des (initial, transition_count, state_count)
//! (from, "label", to)
//! ...
//! ```
//!
//! Labels may be quoted or bare. Quoted labels keep everything between the
//! outermost quotes verbatim, including commas and inner quotes.

use std::fmt::Write;

use super::{LtsDesign, Transition};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AutError {
    #[error("line {line}: empty input, expected `des (initial, transitions, states)` header")]
    Empty { line: usize },
    #[error("line {line}: malformed header: {reason}")]
    MalformedHeader { line: usize, reason: String },
    #[error("line {line}: malformed transition: {reason}")]
    MalformedTransition { line: usize, reason: String },
    #[error("line {line}: header declares {declared} transitions but {found} were found")]
    TransitionCountMismatch {
        line: usize,
        declared: usize,
        found: usize,
    },
    #[error("line {line}: state {state} out of range for {num_states} states")]
    StateOutOfRange {
        line: usize,
        state: usize,
        num_states: usize,
    },
}

impl AutError {
    pub fn line(&self) -> usize {
        match self {
            AutError::Empty { line }
            | AutError::MalformedHeader { line, .. }
            | AutError::MalformedTransition { line, .. }
            | AutError::TransitionCountMismatch { line, .. }
            | AutError::StateOutOfRange { line, .. } => *line,
        }
    }
}

/// Parses `.aut` text. The returned design has an empty id; callers attach
/// one with [`LtsDesign::with_id`].
pub fn parse_aut(text: &str) -> Result<LtsDesign, AutError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines.next().ok_or(AutError::Empty {
        line: text.lines().count().max(1),
    })?;
    let (initial, declared, num_states) = parse_header(header_line, header)?;
    if num_states > 0 && initial >= num_states {
        return Err(AutError::StateOutOfRange {
            line: header_line,
            state: initial,
            num_states,
        });
    }

    let mut transitions = Vec::with_capacity(declared);
    let mut last_line = header_line;
    for (line, body) in lines {
        if transitions.len() == declared {
            return Err(AutError::TransitionCountMismatch {
                line,
                declared,
                found: declared + 1,
            });
        }
        let t = parse_transition(line, body)?;
        for state in [t.source, t.target] {
            if state >= num_states {
                return Err(AutError::StateOutOfRange {
                    line,
                    state,
                    num_states,
                });
            }
        }
        transitions.push(t);
        last_line = line;
    }
    if transitions.len() != declared {
        return Err(AutError::TransitionCountMismatch {
            line: last_line + 1,
            declared,
            found: transitions.len(),
        });
    }

    // Every index and label was checked above.
    Ok(LtsDesign::new("", num_states, initial, transitions)
        .expect("validated while parsing"))
}

fn parse_header(line: usize, header: &str) -> Result<(usize, usize, usize), AutError> {
    let malformed = |reason: &str| AutError::MalformedHeader {
        line,
        reason: reason.to_string(),
    };
    let rest = header
        .strip_prefix("des")
        .ok_or_else(|| malformed("missing `des` keyword"))?
        .trim_start();
    let inner = rest
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| malformed("expected `(initial, transitions, states)`"))?;
    let fields: Vec<&str> = inner.split(',').map(str::trim).collect();
    if fields.len() != 3 {
        return Err(malformed("expected exactly three fields"));
    }
    let mut nums = [0usize; 3];
    for (slot, field) in nums.iter_mut().zip(&fields) {
        *slot = field
            .parse()
            .map_err(|_| malformed(&format!("`{field}` is not a non-negative integer")))?;
    }
    Ok((nums[0], nums[1], nums[2]))
}

fn parse_transition(line: usize, body: &str) -> Result<Transition, AutError> {
    let malformed = |reason: String| AutError::MalformedTransition { line, reason };
    let inner = body
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| malformed("expected `(from, \"label\", to)`".into()))?;
    let (from, rest) = inner
        .split_once(',')
        .ok_or_else(|| malformed("missing label and target".into()))?;
    let (label, to) = rest
        .rsplit_once(',')
        .ok_or_else(|| malformed("missing target".into()))?;

    let state = |s: &str| -> Result<usize, AutError> {
        s.trim()
            .parse()
            .map_err(|_| malformed(format!("`{}` is not a state index", s.trim())))
    };
    let source = state(from)?;
    let target = state(to)?;

    let label = label.trim();
    let label = if label.len() >= 2 && label.starts_with('"') && label.ends_with('"') {
        &label[1..label.len() - 1]
    } else {
        label
    };
    if label.is_empty() {
        return Err(malformed("empty label".into()));
    }
    Ok(Transition::new(source, label, target))
}

/// Writes the canonical form: every label quoted, `", "` separators, one
/// transition per line and a trailing newline.
pub fn serialize_aut(design: &LtsDesign) -> String {
    let mut out = String::with_capacity(16 + design.num_transitions() * 16);
    let _ = writeln!(
        out,
        "des ({}, {}, {})",
        design.initial(),
        design.num_transitions(),
        design.num_states()
    );
    for t in design.transitions() {
        let _ = writeln!(out, "({}, \"{}\", {})", t.source, t.label, t.target);
    }
    out
}
