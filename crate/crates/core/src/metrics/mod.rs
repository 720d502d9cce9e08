//! The seven comprehension metrics and corpus ranking.

mod rank;
mod report;

pub use rank::{rank_corpus, average_ranks, Direction, RankedCorpus, RankedEntry};
pub use report::{compute_all, compute_with, write_csv, MetricReport, CSV_HEADER};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::graph::{
    bfs_depth, girvan_newman, longest_simple_path, project_undirected, weak_components,
    GraphError, DEFAULT_NODE_CAP,
};
use crate::lts::LtsDesign;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MetricError {
    #[error("design `{0}` has no states")]
    NoStates(String),
    #[error("unknown metric `{0}` (expected one of: cyclomatic, state_space, avg_branching, max_depth, albin, modularity, redundancy)")]
    UnknownMetric(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Cyclomatic,
    StateSpace,
    AvgBranching,
    MaxDepth,
    Albin,
    Modularity,
    Redundancy,
}

impl Metric {
    /// Presentation order of the correlation table.
    pub const ALL: [Metric; 7] = [
        Metric::Cyclomatic,
        Metric::StateSpace,
        Metric::AvgBranching,
        Metric::MaxDepth,
        Metric::Albin,
        Metric::Modularity,
        Metric::Redundancy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Cyclomatic => "cyclomatic",
            Metric::StateSpace => "state_space",
            Metric::AvgBranching => "avg_branching",
            Metric::MaxDepth => "max_depth",
            Metric::Albin => "albin",
            Metric::Modularity => "modularity",
            Metric::Redundancy => "redundancy",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            Metric::Cyclomatic => "Cyclomatic Complexity (V)",
            Metric::StateSpace => "State Space Size",
            Metric::AvgBranching => "Average Branching Factor",
            Metric::MaxDepth => "Max Depth",
            Metric::Albin => "Albin Complexity",
            Metric::Modularity => "Modularity (Q)",
            Metric::Redundancy => "Redundancy (J)",
        }
    }

    pub fn value(self, report: &MetricReport) -> f64 {
        match self {
            Metric::Cyclomatic => report.cyclomatic as f64,
            Metric::StateSpace => report.state_space_size as f64,
            Metric::AvgBranching => report.avg_branching,
            Metric::MaxDepth => report.max_depth as f64,
            Metric::Albin => report.albin as f64,
            Metric::Modularity => report.modularity_q,
            Metric::Redundancy => report.redundancy_j,
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = MetricError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        Metric::ALL
            .into_iter()
            .find(|m| m.name() == key || m.title().eq_ignore_ascii_case(s.trim()))
            .or(match key.as_str() {
                "v" => Some(Metric::Cyclomatic),
                "state_space_size" | "states" => Some(Metric::StateSpace),
                "branching" => Some(Metric::AvgBranching),
                "depth" => Some(Metric::MaxDepth),
                "q" | "modularity_q" => Some(Metric::Modularity),
                "j" | "redundancy_j" => Some(Metric::Redundancy),
                _ => None,
            })
            .ok_or_else(|| MetricError::UnknownMetric(s.to_string()))
    }
}

/// McCabe's `E - N + 2P`, counting every transition.
pub fn cyclomatic(design: &LtsDesign) -> i64 {
    let p = weak_components(design).count as i64;
    design.num_transitions() as i64 - design.num_states() as i64 + 2 * p
}

pub fn state_space_size(design: &LtsDesign) -> usize {
    design.num_states()
}

/// Mean out-degree `E / N`.
pub fn avg_branching(design: &LtsDesign) -> Result<f64, MetricError> {
    if design.num_states() == 0 {
        return Err(MetricError::NoStates(design.id().to_string()));
    }
    Ok(design.num_transitions() as f64 / design.num_states() as f64)
}

/// BFS eccentricity of the initial state.
pub fn max_depth(design: &LtsDesign) -> Result<usize, MetricError> {
    if design.num_states() == 0 {
        return Err(MetricError::NoStates(design.id().to_string()));
    }
    Ok(bfs_depth(design, design.initial())?)
}

/// `N + sum(in + out degree) + L`, where the degree sum is `2E`.
pub fn albin(design: &LtsDesign) -> Result<usize, MetricError> {
    let l = longest_simple_path(design, DEFAULT_NODE_CAP)?;
    Ok(design.num_states() + 2 * design.num_transitions() + l)
}

pub fn modularity(design: &LtsDesign) -> f64 {
    girvan_newman(&project_undirected(design)).q
}

/// Mean pairwise Jaccard similarity of successor sets, plus the number of
/// pairs with identical non-empty successor sets.
///
/// Two states without successors count as identical (J = 1).
pub fn redundancy(design: &LtsDesign) -> (f64, usize) {
    let n = design.num_states();
    if n < 2 {
        return (0.0, 0);
    }
    let succ = design.successor_sets();
    let mut total = 0.0;
    let mut identical = 0;
    for u in 0..n {
        for v in u + 1..n {
            let (a, b) = (&succ[u], &succ[v]);
            if a.is_empty() && b.is_empty() {
                total += 1.0;
                continue;
            }
            let shared = sorted_intersection_len(a, b);
            let union = a.len() + b.len() - shared;
            if shared == union {
                identical += 1;
            }
            total += shared as f64 / union as f64;
        }
    }
    let pairs = n * (n - 1) / 2;
    (total / pairs as f64, identical)
}

fn sorted_intersection_len(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}
