use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `k` strengths with `p[i+1] / p[i] = ratio`, normalized to sum 1.
pub fn geometric_strengths(k: usize, ratio: f64) -> Vec<f64> {
    let raw: Vec<f64> = (0..k).map(|i| ratio.powi(i as i32)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|p| p / total).collect()
}

/// `count` pairs of distinct items drawn uniformly with replacement.
pub fn pairs_with_replacement(k: usize, count: usize, seed: u64) -> Vec<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| loop {
            let (a, b) = (rng.random_range(0..k), rng.random_range(0..k));
            if a != b {
                break (a, b);
            }
        })
        .collect()
}

/// Plays each pair once under the Bradley-Terry law; `wins[i][j]` counts
/// how often `i` beat `j`.
pub fn simulate_wins(strengths: &[f64], pairs: &[(usize, usize)], seed: u64) -> Vec<Vec<u64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = strengths.len();
    let mut wins = vec![vec![0u64; k]; k];
    for &(a, b) in pairs {
        let p_a = strengths[a] / (strengths[a] + strengths[b]);
        if rng.random::<f64>() < p_a {
            wins[a][b] += 1;
        } else {
            wins[b][a] += 1;
        }
    }
    wins
}
