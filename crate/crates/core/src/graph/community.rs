use serde::{Deserialize, Serialize};

use super::betweenness::betweenness_on;
use super::traversal::components_of;
use super::{GraphError, UndirectedProjection};

/// Community label per node together with the partition's modularity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommunityAssignment {
    pub labels: Vec<usize>,
    pub q: f64,
}

impl CommunityAssignment {
    pub fn community_count(&self) -> usize {
        self.labels.iter().max().map_or(0, |m| m + 1)
    }
}

// Betweenness and Q values closer than this are treated as ties.
const BETWEENNESS_TIE: f64 = 1e-9;
const Q_TIE: f64 = 1e-12;

/// Newman-Girvan modularity of `labels` on `g`.
///
/// Evaluated per community as `sum_c (l_c / E - (d_c / 2E)^2)` with `l_c` the
/// intra-community edge count and `d_c` the community's total degree. A graph
/// without edges has Q = 0.
pub fn modularity_q(g: &UndirectedProjection, labels: &[usize]) -> Result<f64, GraphError> {
    if labels.len() != g.num_nodes() {
        return Err(GraphError::LabelCount {
            expected: g.num_nodes(),
            got: labels.len(),
        });
    }
    let m = g.total_edges();
    if m == 0 {
        return Ok(0.0);
    }
    let k = labels.iter().max().map_or(0, |x| x + 1);
    let mut internal = vec![0usize; k];
    let mut degree = vec![0usize; k];
    for (v, &c) in labels.iter().enumerate() {
        degree[c] += g.degree(v);
    }
    for &(a, b) in g.edges() {
        if labels[a] == labels[b] {
            internal[labels[a]] += 1;
        }
    }
    let m = m as f64;
    Ok(internal
        .iter()
        .zip(&degree)
        .map(|(&l, &d)| l as f64 / m - (d as f64 / (2.0 * m)).powi(2))
        .sum())
}

/// Distinct component partitions visited while Girvan-Newman removes edges,
/// starting with the components of the intact graph.
pub fn girvan_newman_dendrogram(g: &UndirectedProjection) -> Vec<Vec<usize>> {
    let mut adjacency = g.adjacency().to_vec();
    let mut partitions = vec![components_of(&adjacency).labels];
    let mut remaining = g.total_edges();
    while remaining > 0 {
        let scores = betweenness_on(&adjacency);
        let mut best: Option<((usize, usize), f64)> = None;
        for (&edge, &score) in &scores {
            match best {
                Some((_, b)) if score <= b + BETWEENNESS_TIE * b.max(1.0) => {}
                _ => best = Some((edge, score)),
            }
        }
        let ((a, b), _) = best.expect("graph has edges");
        adjacency[a].retain(|&x| x != b);
        adjacency[b].retain(|&x| x != a);
        remaining -= 1;

        let labels = components_of(&adjacency).labels;
        if partitions.last() != Some(&labels) {
            partitions.push(labels);
        }
    }
    partitions
}

/// Runs Girvan-Newman to exhaustion and returns the visited partition with
/// the highest modularity; on ties the one reached with fewer removals wins.
pub fn girvan_newman(g: &UndirectedProjection) -> CommunityAssignment {
    let mut best: Option<CommunityAssignment> = None;
    for labels in girvan_newman_dendrogram(g) {
        let q = modularity_q(g, &labels).expect("labels cover every node");
        match &best {
            Some(b) if q <= b.q + Q_TIE => {}
            _ => best = Some(CommunityAssignment { labels, q }),
        }
    }
    best.expect("dendrogram is never empty")
}
