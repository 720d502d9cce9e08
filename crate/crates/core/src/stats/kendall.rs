//! Kendall's tau-b with tie correction.
//!
//! The statistic uses Knight's O(n log n) merge-sort count. Two-sided
//! p-values come from the exact permutation distribution for small samples
//! and from the normal approximation with tie-adjusted variance otherwise.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

use super::StatsError;

/// Sample sizes below this use the exact permutation p-value.
pub const EXACT_P_VALUE_BELOW: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TauResult {
    pub tau: f64,
    pub p_value: f64,
}

/// Sum of `f(t)` over the sizes `t` of runs of equal adjacent values.
fn tie_sum(sorted: &[f64], f: impl Fn(f64) -> f64) -> f64 {
    let mut total = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i + 1;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        total += f((j - i) as f64);
        i = j;
    }
    total
}

/// Counts inversions in `v` while sorting it.
fn merge_count(v: &mut [f64], buf: &mut Vec<f64>) -> u64 {
    let n = v.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut swaps = merge_count(&mut v[..mid], buf) + merge_count(&mut v[mid..], buf);
    buf.clear();
    let (mut i, mut j) = (0, mid);
    while i < mid && j < n {
        if v[j] < v[i] {
            buf.push(v[j]);
            swaps += (mid - i) as u64;
            j += 1;
        } else {
            buf.push(v[i]);
            i += 1;
        }
    }
    buf.extend_from_slice(&v[i..mid]);
    buf.extend_from_slice(&v[j..n]);
    v.copy_from_slice(buf);
    swaps
}

struct Counts {
    /// concordant minus discordant
    s: f64,
    pairs: f64,
    x_ties: f64,
    y_ties: f64,
}

fn counts(x: &[f64], y: &[f64]) -> Counts {
    let n = x.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| x[a].total_cmp(&x[b]).then(y[a].total_cmp(&y[b])));
    let xs: Vec<f64> = idx.iter().map(|&i| x[i]).collect();
    let mut ys: Vec<f64> = idx.iter().map(|&i| y[i]).collect();

    let pairs_of = |t: f64| t * (t - 1.0) / 2.0;
    let x_ties = tie_sum(&xs, pairs_of);
    // pairs tied on both x and y
    let mut joint = 0.0;
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        while j < n && xs[j] == xs[i] && ys[j] == ys[i] {
            j += 1;
        }
        joint += pairs_of((j - i) as f64);
        i = j;
    }

    let swaps = merge_count(&mut ys, &mut Vec::with_capacity(n)) as f64;
    let y_ties = tie_sum(&ys, pairs_of);
    let pairs = pairs_of(n as f64);
    Counts {
        s: pairs - x_ties - y_ties + joint - 2.0 * swaps,
        pairs,
        x_ties,
        y_ties,
    }
}

fn check(x: &[f64], y: &[f64]) -> Result<(), StatsError> {
    if x.len() != y.len() {
        return Err(StatsError::LengthMismatch(x.len(), y.len()));
    }
    if x.len() < 2 {
        return Err(StatsError::TooFewItems {
            needed: 2,
            got: x.len(),
        });
    }
    if x.iter().chain(y).any(|v| v.is_nan()) {
        return Err(StatsError::NotANumber);
    }
    Ok(())
}

/// Tau-b between two value lists describing the same items, with a
/// two-sided p-value against the null of no association.
pub fn kendall_tau(x: &[f64], y: &[f64]) -> Result<TauResult, StatsError> {
    check(x, y)?;
    let c = counts(x, y);
    let denom = ((c.pairs - c.x_ties) * (c.pairs - c.y_ties)).sqrt();
    if denom == 0.0 {
        return Err(StatsError::TauUndefined);
    }
    let tau = (c.s / denom).clamp(-1.0, 1.0);
    let p_value = if x.len() < EXACT_P_VALUE_BELOW {
        exact_p_value(x, y, c.s)
    } else {
        normal_p_value(x, y, c.s)
    };
    Ok(TauResult { tau, p_value })
}

fn normal_p_value(x: &[f64], y: &[f64], s: f64) -> f64 {
    let n = x.len() as f64;
    let mut xs = x.to_vec();
    let mut ys = y.to_vec();
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);

    let v0 = n * (n - 1.0) * (2.0 * n + 5.0);
    let vt = tie_sum(&xs, |t| t * (t - 1.0) * (2.0 * t + 5.0));
    let vu = tie_sum(&ys, |t| t * (t - 1.0) * (2.0 * t + 5.0));
    let t1 = tie_sum(&xs, |t| t * (t - 1.0));
    let u1 = tie_sum(&ys, |t| t * (t - 1.0));
    let t2 = tie_sum(&xs, |t| t * (t - 1.0) * (t - 2.0));
    let u2 = tie_sum(&ys, |t| t * (t - 1.0) * (t - 2.0));
    let var = (v0 - vt - vu) / 18.0
        + t1 * u1 / (2.0 * n * (n - 1.0))
        + t2 * u2 / (9.0 * n * (n - 1.0) * (n - 2.0));
    if var <= 0.0 {
        return 1.0;
    }
    let z = s.abs() / var.sqrt();
    erfc(z / std::f64::consts::SQRT_2).clamp(0.0, 1.0)
}

/// Fraction of all orderings of `y` whose |S| reaches the observed |S|.
fn exact_p_value(x: &[f64], y: &[f64], s_obs: f64) -> f64 {
    let n = x.len();
    let sign = |a: f64, b: f64| match a.total_cmp(&b) {
        Ordering::Less => -1i32,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    };
    let x_sign: Vec<Vec<i32>> = (0..n)
        .map(|i| (0..n).map(|j| sign(x[i], x[j])).collect())
        .collect();
    // The pair term is symmetric in (i, j), so S only moves through the
    // two positions touched by each swap.
    let term = |p: &[f64], i: usize, j: usize| x_sign[i][j] * sign(p[i], p[j]);
    let touching = |p: &[f64], a: usize, b: usize| {
        let mut t = 0;
        for j in 0..n {
            if j != a {
                t += term(p, a, j);
            }
            if j != b && j != a {
                t += term(p, b, j);
            }
        }
        t
    };

    let target = s_obs.abs().round() as i32;
    let mut perm = y.to_vec();
    let mut s: i32 = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| term(&perm, i, j))
        .sum();
    let mut extreme = u64::from(s.abs() >= target);
    let mut total = 1u64;
    // Heap's algorithm
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            let a = if i % 2 == 0 { 0 } else { c[i] };
            s -= touching(&perm, a, i);
            perm.swap(a, i);
            s += touching(&perm, a, i);
            total += 1;
            if s.abs() >= target {
                extreme += 1;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    extreme as f64 / total as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_and_reversed() {
        let x: Vec<f64> = (0..30).map(f64::from).collect();
        let rev: Vec<f64> = x.iter().rev().copied().collect();
        assert_eq!(kendall_tau(&x, &x).unwrap().tau, 1.0);
        assert_eq!(kendall_tau(&x, &rev).unwrap().tau, -1.0);
        assert!(kendall_tau(&x, &x).unwrap().p_value < 1e-10);
    }

    #[test]
    fn one_swap_of_three() {
        let r = kendall_tau(&[1.0, 2.0, 3.0], &[1.0, 3.0, 2.0]).unwrap();
        assert!((r.tau - 1.0 / 3.0).abs() < 1e-15);
        // orderings of 3 with |S| >= 1: all 6
        assert_eq!(r.p_value, 1.0);
    }

    #[test]
    fn exact_p_for_perfect_small_sample() {
        // only the identity and the reversal reach |S| = 10 among 5! orderings
        let x = [1.0, 2.0, 3.0, 4.0, 5.0];
        let r = kendall_tau(&x, &x).unwrap();
        assert!((r.p_value - 2.0 / 120.0).abs() < 1e-15);
    }

    #[test]
    fn tie_corrected() {
        // x ties (1,2); y ties (3,4)
        let x = [1.0, 1.0, 2.0, 3.0];
        let y = [1.0, 2.0, 3.0, 3.0];
        // concordant 4, discordant 0, x-only tie 1, y-only tie 1: 4/sqrt(5*5)
        let r = kendall_tau(&x, &y).unwrap();
        assert!((r.tau - 0.8).abs() < 1e-15);
    }

    #[test]
    fn errors() {
        assert_eq!(kendall_tau(&[1.0], &[1.0]), Err(StatsError::TooFewItems { needed: 2, got: 1 }));
        assert_eq!(kendall_tau(&[1.0, 2.0], &[1.0]), Err(StatsError::LengthMismatch(2, 1)));
        assert_eq!(kendall_tau(&[1.0, 1.0, 1.0], &[1.0, 2.0, 3.0]), Err(StatsError::TauUndefined));
        assert_eq!(kendall_tau(&[1.0, f64::NAN], &[1.0, 2.0]), Err(StatsError::NotANumber));
    }

    #[test]
    fn normal_p_value_no_ties() {
        // n = 48, S = 500: var = 48*47*101/18, z = 500/sqrt(var)
        let n = 48;
        let x: Vec<f64> = (0..n).map(f64::from).collect();
        let var: f64 = 48.0 * 47.0 * 101.0 / 18.0;
        let z = 500.0 / var.sqrt();
        let expected = erfc(z / std::f64::consts::SQRT_2);
        let y = x.clone();
        assert!((normal_p_value(&x, &y, 500.0) - expected).abs() < 1e-15);
    }
}
