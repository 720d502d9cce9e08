//! Bradley-Terry strengths via Hunter's MM iteration.
//!
//! Each sweep sets `p_i = W_i / sum_{j != i} n_ij / (p_i + p_j)` for every
//! item simultaneously, then renormalizes to sum 1. The update minorizes
//! the log-likelihood, so it never decreases.

use serde::{Deserialize, Serialize};

use super::{ComparisonMatrix, Polarity, StatsError};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BtOptions {
    /// Convergence threshold on `max_i |Δ ln p_i|`.
    pub tol: f64,
    pub max_iter: usize,
    /// Pseudo-count added to every off-diagonal win count when the win
    /// graph is not strongly connected. Zero disables smoothing.
    pub alpha: f64,
}

impl Default for BtOptions {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            max_iter: 10_000,
            alpha: 0.01,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BtResult {
    pub items: Vec<String>,
    /// Positive strengths summing to 1, aligned with `items`.
    pub strengths: Vec<f64>,
    /// Item ids by descending strength.
    pub ranking: Vec<String>,
    pub iterations: usize,
    pub converged: bool,
    pub smoothed: bool,
    pub log_likelihood: f64,
    pub polarity: Polarity,
}

impl BtResult {
    pub fn strength_of(&self, id: &str) -> Option<f64> {
        self.items
            .iter()
            .position(|x| x == id)
            .map(|i| self.strengths[i])
    }
}

/// `sum_{i != j} w_ij ln(p_i / (p_i + p_j))`.
pub fn log_likelihood(wins: &[Vec<f64>], strengths: &[f64]) -> f64 {
    // Neumaier summation keeps rounding well below the per-sweep gains
    let (mut sum, mut carry) = (0.0f64, 0.0f64);
    for (i, row) in wins.iter().enumerate() {
        for (j, &w) in row.iter().enumerate() {
            if i != j && w > 0.0 {
                let term = -w * (strengths[j] / strengths[i]).ln_1p();
                let t = sum + term;
                carry += if sum.abs() >= term.abs() {
                    (sum - t) + term
                } else {
                    (term - t) + sum
                };
                sum = t;
            }
        }
    }
    sum + carry
}

fn strongly_connected(wins: &[Vec<f64>]) -> bool {
    let k = wins.len();
    let reach = |forward: bool| {
        let mut seen = vec![false; k];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            for w in 0..k {
                let edge = if forward { wins[v][w] } else { wins[w][v] };
                if edge > 0.0 && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    reach(true) && reach(false)
}

pub fn fit_bt(m: &ComparisonMatrix, opts: &BtOptions) -> Result<BtResult, StatsError> {
    fit_bt_traced(m, opts, |_, _| {})
}

/// [`fit_bt`] that reports `(sweep, log_likelihood)` after every MM sweep.
pub fn fit_bt_traced(
    m: &ComparisonMatrix,
    opts: &BtOptions,
    mut observe: impl FnMut(usize, f64),
) -> Result<BtResult, StatsError> {
    let k = m.len();
    if k < 2 {
        return Err(StatsError::TooFewItems { needed: 2, got: k });
    }
    if m.total_comparisons() == 0 {
        return Err(StatsError::EmptyMatrix);
    }

    let mut wins: Vec<Vec<f64>> = m
        .wins
        .iter()
        .map(|row| row.iter().map(|&w| w as f64).collect())
        .collect();
    let mut smoothed = false;
    if !strongly_connected(&wins) {
        if opts.alpha <= 0.0 {
            return Err(StatsError::NotStronglyConnected);
        }
        for (i, row) in wins.iter_mut().enumerate() {
            for (j, w) in row.iter_mut().enumerate() {
                if i != j {
                    *w += opts.alpha;
                }
            }
        }
        smoothed = true;
    }

    let total_wins: Vec<f64> = wins.iter().map(|row| row.iter().sum()).collect();
    let mut p = vec![1.0 / k as f64; k];
    let mut next = vec![0.0; k];
    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iter {
        iterations += 1;
        for i in 0..k {
            let mut denom = 0.0;
            for j in 0..k {
                let n_ij = wins[i][j] + wins[j][i];
                if j != i && n_ij > 0.0 {
                    denom += n_ij / (p[i] + p[j]);
                }
            }
            next[i] = total_wins[i] / denom;
        }
        let sum: f64 = next.iter().sum();
        let mut delta: f64 = 0.0;
        for i in 0..k {
            next[i] /= sum;
            delta = delta.max((next[i].ln() - p[i].ln()).abs());
        }
        std::mem::swap(&mut p, &mut next);
        observe(iterations, log_likelihood(&wins, &p));
        if delta < opts.tol {
            converged = true;
            break;
        }
    }

    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| p[b].total_cmp(&p[a]).then(a.cmp(&b)));
    Ok(BtResult {
        items: m.items.clone(),
        ranking: order.iter().map(|&i| m.items[i].clone()).collect(),
        log_likelihood: log_likelihood(&wins, &p),
        strengths: p,
        iterations,
        converged,
        smoothed,
        polarity: m.polarity,
    })
}
