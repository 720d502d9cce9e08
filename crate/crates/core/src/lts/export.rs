use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{LtsDesign, StateId};

/// Wire form of a design for UI clients. Field order is the serialization order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GraphJson {
    pub id: String,
    pub initial: StateId,
    pub num_states: usize,
    pub transitions: Vec<GraphJsonTransition>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJsonTransition {
    pub from: StateId,
    pub label: String,
    pub to: StateId,
}

impl From<&LtsDesign> for GraphJson {
    fn from(d: &LtsDesign) -> Self {
        GraphJson {
            id: d.id().to_string(),
            initial: d.initial(),
            num_states: d.num_states(),
            transitions: d
                .transitions()
                .iter()
                .map(|t| GraphJsonTransition {
                    from: t.source,
                    label: t.label.clone(),
                    to: t.target,
                })
                .collect(),
        }
    }
}

pub fn to_graph_json(design: &LtsDesign) -> String {
    serde_json::to_string(&GraphJson::from(design)).expect("graph json is always serializable")
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz digraph with one node per state and one edge per transition.
/// The initial state is drawn as a filled double circle.
pub fn to_dot(design: &LtsDesign) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", escape(design.id()));
    out.push_str("  rankdir=LR;\n");
    out.push_str("  node [shape=circle];\n");
    for s in 0..design.num_states() {
        if s == design.initial() {
            let _ = writeln!(out, "  {s} [shape=doublecircle, style=filled, fillcolor=lightgrey];");
        } else {
            let _ = writeln!(out, "  {s};");
        }
    }
    for t in design.transitions() {
        let _ = writeln!(
            out,
            "  {} -> {} [label=\"{}\"];",
            t.source,
            t.target,
            escape(&t.label)
        );
    }
    out.push_str("}\n");
    out
}
