use std::collections::{BTreeMap, VecDeque};

use super::UndirectedProjection;

/// Shortest-path edge betweenness of every edge, keyed by `(min, max)`.
///
/// Each unordered pair of connected nodes contributes one unit, split evenly
/// over its shortest paths.
pub fn edge_betweenness(g: &UndirectedProjection) -> BTreeMap<(usize, usize), f64> {
    betweenness_on(g.adjacency())
}

pub(crate) fn betweenness_on(adjacency: &[Vec<usize>]) -> BTreeMap<(usize, usize), f64> {
    let n = adjacency.len();
    let mut scores: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    for (v, adj) in adjacency.iter().enumerate() {
        for &w in adj {
            if v < w {
                scores.insert((v, w), 0.0);
            }
        }
    }

    let mut order = Vec::with_capacity(n);
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![usize::MAX; n];
    let mut delta = vec![0.0f64; n];
    let mut queue = VecDeque::new();

    for source in 0..n {
        order.clear();
        for p in &mut preds {
            p.clear();
        }
        sigma.fill(0.0);
        dist.fill(usize::MAX);
        delta.fill(0.0);

        sigma[source] = 1.0;
        dist[source] = 0;
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &adjacency[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                    preds[w].push(v);
                }
            }
        }

        for &w in order.iter().rev() {
            for &v in &preds[w] {
                let credit = sigma[v] / sigma[w] * (1.0 + delta[w]);
                *scores.get_mut(&(v.min(w), v.max(w))).expect("edge exists") += credit;
                delta[v] += credit;
            }
        }
    }

    // Every unordered pair was counted from both endpoints.
    for s in scores.values_mut() {
        *s /= 2.0;
    }
    scores
}
