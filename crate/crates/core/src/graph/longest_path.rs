use std::time::Instant;

use super::GraphError;
use crate::lts::LtsDesign;

pub const DEFAULT_NODE_CAP: usize = 200;

/// Exhaustive backtracking search for the longest directed simple path.
#[derive(Debug, Clone, Copy)]
pub struct LongestPathSearch {
    pub node_cap: usize,
    pub deadline: Option<Instant>,
}

impl Default for LongestPathSearch {
    fn default() -> Self {
        Self {
            node_cap: DEFAULT_NODE_CAP,
            deadline: None,
        }
    }
}

/// Length in edges of the longest path that visits no state twice, over all
/// start states.
pub fn longest_simple_path(design: &LtsDesign, node_cap: usize) -> Result<usize, GraphError> {
    LongestPathSearch {
        node_cap,
        deadline: None,
    }
    .run(design)
}

struct Dfs<'a> {
    succ: &'a [Vec<usize>],
    on_path: Vec<bool>,
    best: usize,
    // Reachable-set bound for the current start state.
    ceiling: usize,
    steps: u64,
    deadline: Option<Instant>,
}

impl Dfs<'_> {
    fn extend(&mut self, v: usize, len: usize) -> Result<(), GraphError> {
        self.steps += 1;
        if self.steps.is_multiple_of(4096) {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    return Err(GraphError::TimedOut);
                }
            }
        }
        if len > self.best {
            self.best = len;
        }
        for &w in &self.succ[v] {
            if self.best == self.ceiling {
                return Ok(());
            }
            if !self.on_path[w] {
                self.on_path[w] = true;
                self.extend(w, len + 1)?;
                self.on_path[w] = false;
            }
        }
        Ok(())
    }
}

fn reachable_count(succ: &[Vec<usize>], start: usize) -> usize {
    let mut seen = vec![false; succ.len()];
    seen[start] = true;
    let mut stack = vec![start];
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in &succ[v] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count
}

impl LongestPathSearch {
    pub fn run(&self, design: &LtsDesign) -> Result<usize, GraphError> {
        let n = design.num_states();
        if n > self.node_cap {
            return Err(GraphError::TooLarge {
                num_states: n,
                cap: self.node_cap,
            });
        }
        if n == 0 {
            return Ok(0);
        }
        let mut succ = design.successor_sets();
        for (v, s) in succ.iter_mut().enumerate() {
            s.retain(|&w| w != v);
        }

        let mut dfs = Dfs {
            succ: &succ,
            on_path: vec![false; n],
            best: 0,
            ceiling: 0,
            steps: 0,
            deadline: self.deadline,
        };
        for start in 0..n {
            if dfs.best == n - 1 {
                break;
            }
            // A path from `start` visits at most its reachable set.
            dfs.ceiling = reachable_count(&succ, start) - 1;
            if dfs.ceiling <= dfs.best {
                continue;
            }
            dfs.on_path[start] = true;
            dfs.extend(start, 0)?;
            dfs.on_path[start] = false;
        }
        Ok(dfs.best)
    }
}
