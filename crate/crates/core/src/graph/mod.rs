//! Graph primitives used by the metric engine.

mod betweenness;
mod community;
mod longest_path;
mod projection;
mod traversal;

pub use betweenness::edge_betweenness;
pub use community::{girvan_newman, girvan_newman_dendrogram, modularity_q, CommunityAssignment};
pub use longest_path::{longest_simple_path, LongestPathSearch, DEFAULT_NODE_CAP};
pub use projection::{project_undirected, UndirectedProjection};
pub use traversal::{bfs_depth, weak_components, Components};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("state {state} out of range for {num_states} states")]
    StateOutOfRange { state: usize, num_states: usize },
    #[error("graph too large for exact longest path: {num_states} states exceeds cap of {cap}")]
    TooLarge { num_states: usize, cap: usize },
    #[error("longest path search exceeded its time budget")]
    TimedOut,
    #[error("community labels cover {got} nodes, graph has {expected}")]
    LabelCount { expected: usize, got: usize },
}
