use std::collections::BTreeSet;

use crate::lts::LtsDesign;

/// Simple undirected view of a design: direction, labels, parallel edges
/// and self-loops are all dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedProjection {
    num_nodes: usize,
    edges: BTreeSet<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl UndirectedProjection {
    /// Builds a projection from arbitrary node pairs; self-pairs and repeats
    /// are ignored. Panics if a node is out of range.
    pub fn from_pairs(num_nodes: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut edges = BTreeSet::new();
        for (a, b) in pairs {
            assert!(a < num_nodes && b < num_nodes, "node out of range");
            if a != b {
                edges.insert((a.min(b), a.max(b)));
            }
        }
        let mut adjacency = vec![Vec::new(); num_nodes];
        for &(a, b) in &edges {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for adj in &mut adjacency {
            adj.sort_unstable();
        }
        Self {
            num_nodes,
            edges,
            adjacency,
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    /// Edges as `(min, max)` pairs in ascending order.
    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn total_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adjacency[node]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub(crate) fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }
}

pub fn project_undirected(design: &LtsDesign) -> UndirectedProjection {
    UndirectedProjection::from_pairs(
        design.num_states(),
        design.transitions().iter().map(|t| (t.source, t.target)),
    )
}
