//! Slow, obviously-correct reference computations for tests.
//!
//! Everything here works on plain `(node_count, edge list)` data and shares
//! no code with `ltsrank-core`, so it can serve as an independent check.

mod simulate;

pub use simulate::{geometric_strengths, pairs_with_replacement, simulate_wins};

/// Directed edges `(source, target)`.
pub type Edges = [(usize, usize)];

const INF: usize = usize::MAX / 4;

/// Reachability from `start` via Warshall's transitive closure.
pub fn reachable_by_closure(n: usize, edges: &Edges, start: usize) -> Vec<bool> {
    let mut reach = vec![vec![false; n]; n];
    for (i, row) in reach.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(a, b) in edges {
        reach[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    reach[start].clone()
}

/// All-pairs directed distances by Floyd-Warshall (`INF` when unreachable).
fn directed_distances(n: usize, edges: &Edges) -> Vec<Vec<usize>> {
    let mut d = vec![vec![INF; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for &(a, b) in edges {
        if a != b {
            d[a][b] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Largest finite distance from `start`.
pub fn eccentricity(n: usize, edges: &Edges, start: usize) -> usize {
    directed_distances(n, edges)[start]
        .iter()
        .copied()
        .filter(|&d| d < INF)
        .max()
        .unwrap_or(0)
}

/// Number of weakly connected components by label propagation.
pub fn weak_component_count(n: usize, edges: &Edges) -> usize {
    let mut label: Vec<usize> = (0..n).collect();
    loop {
        let mut changed = false;
        for &(a, b) in edges {
            let m = label[a].min(label[b]);
            if label[a] != m || label[b] != m {
                label[a] = m;
                label[b] = m;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut roots: Vec<usize> = label.clone();
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}

/// Longest simple path (in edges) by dynamic programming over visited sets:
/// `ok[mask][v]` says some ordering of exactly `mask` forms a path ending at `v`.
pub fn longest_path_by_subsets(n: usize, edges: &Edges) -> usize {
    assert!(n <= 16, "subset search is exponential");
    if n == 0 {
        return 0;
    }
    let mut adj = vec![vec![false; n]; n];
    for &(a, b) in edges {
        if a != b {
            adj[a][b] = true;
        }
    }
    let mut ok = vec![vec![false; n]; 1 << n];
    let mut best = 0;
    for v in 0..n {
        ok[1 << v][v] = true;
    }
    for mask in 1usize..(1 << n) {
        for v in 0..n {
            if !ok[mask][v] {
                continue;
            }
            best = best.max(mask.count_ones() as usize - 1);
            for w in 0..n {
                if adj[v][w] && mask & (1 << w) == 0 {
                    ok[mask | (1 << w)][w] = true;
                }
            }
        }
    }
    best
}

/// Every simple path as an explicit node sequence (single nodes included).
pub fn all_simple_paths(n: usize, edges: &Edges) -> Vec<Vec<usize>> {
    let mut frontier: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut all = frontier.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for path in &frontier {
            let last = *path.last().unwrap();
            let mut targets: Vec<usize> = edges
                .iter()
                .filter(|&&(a, _)| a == last)
                .map(|&(_, b)| b)
                .collect();
            targets.sort_unstable();
            targets.dedup();
            for t in targets {
                if !path.contains(&t) {
                    let mut p = path.clone();
                    p.push(t);
                    next.push(p);
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all
}

pub fn longest_path_by_enumeration(n: usize, edges: &Edges) -> usize {
    all_simple_paths(n, edges)
        .iter()
        .map(|p| p.len() - 1)
        .max()
        .unwrap_or(0)
}

/// Mean Jaccard similarity of successor sets over unordered state pairs,
/// with J = 1 for two empty sets, plus the count of pairs with identical
/// non-empty sets.
pub fn jaccard_redundancy(n: usize, edges: &Edges) -> (f64, usize) {
    if n < 2 {
        return (0.0, 0);
    }
    let succ: Vec<std::collections::BTreeSet<usize>> = (0..n)
        .map(|u| edges.iter().filter(|e| e.0 == u).map(|e| e.1).collect())
        .collect();
    let mut sum = 0.0;
    let mut identical = 0;
    let mut pairs = 0;
    for u in 0..n {
        for v in u + 1..n {
            pairs += 1;
            let inter = succ[u].intersection(&succ[v]).count();
            let union = succ[u].union(&succ[v]).count();
            if union == 0 {
                sum += 1.0;
            } else {
                sum += inter as f64 / union as f64;
                if inter == union {
                    identical += 1;
                }
            }
        }
    }
    (sum / pairs as f64, identical)
}

/// Undirected simple graph as a 0/1 adjacency matrix.
pub fn adjacency_matrix(n: usize, edges: &Edges) -> Vec<Vec<u8>> {
    let mut a = vec![vec![0u8; n]; n];
    for &(x, y) in edges {
        if x != y {
            a[x][y] = 1;
            a[y][x] = 1;
        }
    }
    a
}

/// Modularity straight from the double sum over all ordered node pairs.
pub fn modularity_direct(a: &[Vec<u8>], labels: &[usize]) -> f64 {
    let n = a.len();
    let k: Vec<f64> = a
        .iter()
        .map(|row| row.iter().map(|&x| x as f64).sum())
        .collect();
    let two_m: f64 = k.iter().sum();
    if two_m == 0.0 {
        return 0.0;
    }
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if labels[i] == labels[j] {
                q += a[i][j] as f64 - k[i] * k[j] / two_m;
            }
        }
    }
    q / two_m
}

/// Edge betweenness from all-pairs distances and path counts: edge (u, v)
/// lies on `sigma(s,u) * sigma(v,t)` shortest s-t paths whenever
/// `d(s,u) + 1 + d(v,t) = d(s,t)`.
pub fn edge_betweenness_by_counting(a: &[Vec<u8>]) -> Vec<((usize, usize), f64)> {
    let n = a.len();
    let mut d = vec![vec![INF; n]; n];
    for i in 0..n {
        d[i][i] = 0;
        for j in 0..n {
            if a[i][j] == 1 {
                d[i][j] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    // sigma[s][t]: number of shortest paths, filled by increasing distance
    let mut sigma = vec![vec![0f64; n]; n];
    for s in 0..n {
        sigma[s][s] = 1.0;
        let mut by_dist: Vec<usize> = (0..n).filter(|&t| d[s][t] < INF).collect();
        by_dist.sort_by_key(|&t| d[s][t]);
        for &t in &by_dist {
            if t == s {
                continue;
            }
            sigma[s][t] = (0..n)
                .filter(|&u| a[u][t] == 1 && d[s][u] + 1 == d[s][t])
                .map(|u| sigma[s][u])
                .sum();
        }
    }
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if a[u][v] == 0 {
                continue;
            }
            let mut b = 0.0;
            for s in 0..n {
                for t in s + 1..n {
                    if d[s][t] >= INF {
                        continue;
                    }
                    if d[s][u] + 1 + d[v][t] == d[s][t] {
                        b += sigma[s][u] * sigma[v][t] / sigma[s][t];
                    }
                    if d[s][v] + 1 + d[u][t] == d[s][t] {
                        b += sigma[s][v] * sigma[u][t] / sigma[s][t];
                    }
                }
            }
            out.push(((u, v), b));
        }
    }
    out
}

/// Sum over connected unordered pairs of their distance.
pub fn total_pair_distance(a: &[Vec<u8>]) -> f64 {
    let n = a.len();
    let mut total = 0.0;
    for s in 0..n {
        // BFS
        let mut dist = vec![INF; n];
        dist[s] = 0;
        let mut q = std::collections::VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for w in 0..n {
                if a[v][w] == 1 && dist[w] == INF {
                    dist[w] = dist[v] + 1;
                    q.push_back(w);
                }
            }
        }
        total += (s + 1..n).filter(|&t| dist[t] < INF).map(|t| dist[t] as f64).sum::<f64>();
    }
    total
}

/// Component labels numbered by smallest member.
fn component_labels(a: &[Vec<u8>]) -> Vec<usize> {
    let n = a.len();
    let mut root: Vec<usize> = (0..n).collect();
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in 0..n {
                if a[i][j] == 1 && root[j] < root[i] {
                    root[i] = root[j];
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut mins: Vec<usize> = root.clone();
    mins.sort_unstable();
    mins.dedup();
    root.iter()
        .map(|r| mins.iter().position(|m| m == r).unwrap())
        .collect()
}

/// Girvan-Newman by brute force: betweenness from path counting, removal
/// of the highest edge (ties to the smallest `(min, max)` key), Q from the
/// direct double sum on the original graph. Returns every distinct visited
/// partition with its Q, in visiting order.
pub fn girvan_newman_by_counting(a: &[Vec<u8>]) -> Vec<(Vec<usize>, f64)> {
    let mut g = a.to_vec();
    let mut visited: Vec<(Vec<usize>, f64)> = Vec::new();
    let mut push = |labels: Vec<usize>| {
        if visited.last().map(|(l, _)| l) != Some(&labels) {
            let q = modularity_direct(a, &labels);
            visited.push((labels, q));
        }
    };
    push(component_labels(&g));
    loop {
        let scores = edge_betweenness_by_counting(&g);
        if scores.is_empty() {
            break;
        }
        let mut best = scores[0];
        for &(e, b) in &scores[1..] {
            if b > best.1 + 1e-9 * best.1.max(1.0) {
                best = (e, b);
            }
        }
        let ((u, v), _) = best;
        g[u][v] = 0;
        g[v][u] = 0;
        push(component_labels(&g));
    }
    visited
}

/// Best partition along the brute-force dendrogram, earliest on ties.
pub fn girvan_newman_best(a: &[Vec<u8>]) -> (Vec<usize>, f64) {
    let mut best: Option<(Vec<usize>, f64)> = None;
    for (labels, q) in girvan_newman_by_counting(a) {
        if best.as_ref().is_none_or(|b| q > b.1 + 1e-12) {
            best = Some((labels, q));
        }
    }
    best.unwrap()
}

/// Every partition of `0..n` as restricted-growth label vectors.
pub fn all_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, labels: &mut Vec<usize>, next: usize, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(labels.clone());
            return;
        }
        for c in 0..=next {
            labels.push(c);
            go(i + 1, n, labels, next.max(c + 1), out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), 0, &mut out);
    out
}

/// Globally optimal modularity over all partitions (first maximum wins).
pub fn best_modularity_exhaustive(a: &[Vec<u8>]) -> (Vec<usize>, f64) {
    let mut best = (Vec::new(), f64::NEG_INFINITY);
    for p in all_partitions(a.len()) {
        let q = modularity_direct(a, &p);
        if q > best.1 + 1e-12 {
            best = (p, q);
        }
    }
    best
}

/// Tau-b by looking at every pair once.
pub fn kendall_tau_b_naive(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len();
    let (mut conc, mut disc, mut tx, mut ty) = (0i64, 0i64, 0i64, 0i64);
    for i in 0..n {
        for j in i + 1..n {
            let dx = (x[i] - x[j]).signum() as i64 * (x[i] != x[j]) as i64;
            let dy = (y[i] - y[j]).signum() as i64 * (y[i] != y[j]) as i64;
            match (dx, dy) {
                (0, 0) => {}
                (0, _) => tx += 1,
                (_, 0) => ty += 1,
                _ if dx == dy => conc += 1,
                _ => disc += 1,
            }
        }
    }
    let num = (conc - disc) as f64;
    let den = (((conc + disc + tx) * (conc + disc + ty)) as f64).sqrt();
    num / den
}
