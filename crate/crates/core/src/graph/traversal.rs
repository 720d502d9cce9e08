use std::collections::VecDeque;

use super::GraphError;
use crate::lts::{LtsDesign, StateId};

/// Weakly connected components; `labels[s]` is the component of state `s`,
/// numbered in order of each component's smallest state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    pub count: usize,
    pub labels: Vec<usize>,
}

pub(crate) fn components_of(adjacency: &[Vec<usize>]) -> Components {
    let n = adjacency.len();
    let mut labels = vec![usize::MAX; n];
    let mut count = 0;
    let mut stack = Vec::new();
    for start in 0..n {
        if labels[start] != usize::MAX {
            continue;
        }
        labels[start] = count;
        stack.push(start);
        while let Some(v) = stack.pop() {
            for &w in &adjacency[v] {
                if labels[w] == usize::MAX {
                    labels[w] = count;
                    stack.push(w);
                }
            }
        }
        count += 1;
    }
    Components { count, labels }
}

pub fn weak_components(design: &LtsDesign) -> Components {
    let mut adjacency = vec![Vec::new(); design.num_states()];
    for t in design.transitions() {
        adjacency[t.source].push(t.target);
        adjacency[t.target].push(t.source);
    }
    components_of(&adjacency)
}

/// Largest shortest-path distance from `source` to any reachable state.
pub fn bfs_depth(design: &LtsDesign, source: StateId) -> Result<usize, GraphError> {
    let n = design.num_states();
    if source >= n {
        return Err(GraphError::StateOutOfRange {
            state: source,
            num_states: n,
        });
    }
    let succ = design.successor_sets();
    let mut dist = vec![usize::MAX; n];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    let mut depth = 0;
    while let Some(v) = queue.pop_front() {
        depth = depth.max(dist[v]);
        for &w in &succ[v] {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    Ok(depth)
}
