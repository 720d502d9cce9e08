//! Labeled transition systems: the in-memory model, the Aldebaran `.aut`
//! text format, structural validation, exports and a seeded generator.

mod aut;
mod export;
mod generate;
mod validate;

pub use aut::{parse_aut, serialize_aut, AutError};
pub use export::{to_dot, to_graph_json, GraphJson, GraphJsonTransition};
pub use generate::{generate_random, GenerateError};
pub use validate::{validate, ValidationReport};

use serde::{Deserialize, Serialize};

/// Dense 0-based state index.
pub type StateId = usize;

/// One labeled edge of an LTS.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Transition {
    pub source: StateId,
    pub label: String,
    pub target: StateId,
}

impl Transition {
    pub fn new(source: StateId, label: impl Into<String>, target: StateId) -> Self {
        Self {
            source,
            label: label.into(),
            target,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DesignError {
    #[error("initial state {initial} out of range for {num_states} states")]
    InitialOutOfRange { initial: StateId, num_states: usize },
    #[error("transition #{index} references state {state}, but there are only {num_states} states")]
    StateOutOfRange {
        index: usize,
        state: StateId,
        num_states: usize,
    },
    #[error("transition #{index} has an empty label")]
    EmptyLabel { index: usize },
    #[error("transition #{index} has a label containing a line break")]
    MultilineLabel { index: usize },
}

/// A directed labeled multigraph with a distinguished initial state.
///
/// Transitions keep their input order, and exact duplicates are retained.
/// Values are immutable once constructed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LtsDesign {
    id: String,
    num_states: usize,
    initial: StateId,
    transitions: Vec<Transition>,
}

impl LtsDesign {
    pub fn new(
        id: impl Into<String>,
        num_states: usize,
        initial: StateId,
        transitions: Vec<Transition>,
    ) -> Result<Self, DesignError> {
        if num_states > 0 && initial >= num_states {
            return Err(DesignError::InitialOutOfRange {
                initial,
                num_states,
            });
        }
        for (index, t) in transitions.iter().enumerate() {
            for state in [t.source, t.target] {
                if state >= num_states {
                    return Err(DesignError::StateOutOfRange {
                        index,
                        state,
                        num_states,
                    });
                }
            }
            if t.label.is_empty() {
                return Err(DesignError::EmptyLabel { index });
            }
            if t.label.contains(['\n', '\r']) {
                return Err(DesignError::MultilineLabel { index });
            }
        }
        Ok(Self {
            id: id.into(),
            num_states,
            initial,
            transitions,
        })
    }

    /// Convenience constructor for unlabeled-looking fixtures: every edge gets
    /// the label `"t"`.
    pub fn from_edges(
        id: impl Into<String>,
        num_states: usize,
        edges: &[(StateId, StateId)],
    ) -> Result<Self, DesignError> {
        let transitions = edges
            .iter()
            .map(|&(s, t)| Transition::new(s, "t", t))
            .collect();
        Self::new(id, num_states, 0, transitions)
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn num_transitions(&self) -> usize {
        self.transitions.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    /// Distinct successor states of every state, sorted ascending.
    pub fn successor_sets(&self) -> Vec<Vec<StateId>> {
        let mut succ = vec![Vec::new(); self.num_states];
        for t in &self.transitions {
            succ[t.source].push(t.target);
        }
        for s in &mut succ {
            s.sort_unstable();
            s.dedup();
        }
        succ
    }

    /// The same design with `extra` isolated states appended.
    pub fn with_isolated_states(&self, extra: usize) -> Self {
        let mut out = self.clone();
        out.num_states += extra;
        out
    }
}
