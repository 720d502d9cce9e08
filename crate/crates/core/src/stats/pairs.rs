use rand::seq::{index, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::StatsError;

/// Resampling budget when a draw leaves the pair graph disconnected.
pub const MAX_SAMPLE_ATTEMPTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSample {
    /// `(a, b)` with `a < b`, in presentation order.
    pub pairs: Vec<(usize, usize)>,
    /// Whether the pairs connect all items into one component.
    pub connected: bool,
    pub attempts: usize,
}

/// Maps a rank in `0..k(k-1)/2` to the pair at that position in
/// lexicographic order.
fn unrank(mut rank: usize, k: usize) -> (usize, usize) {
    let mut a = 0;
    loop {
        let row = k - 1 - a;
        if rank < row {
            return (a, a + 1 + rank);
        }
        rank -= row;
        a += 1;
    }
}

pub(crate) fn pairs_connect(k: usize, pairs: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut groups = k;
    for &(a, b) in pairs {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            groups -= 1;
        }
    }
    groups <= 1
}

/// Draws `n` distinct unordered pairs of `0..k` uniformly without
/// replacement. Draws are repeated (up to [`MAX_SAMPLE_ATTEMPTS`]) while the
/// pairs fail to connect every item, as long as connection is possible.
pub fn sample_pairs(k: usize, n: usize, seed: u64) -> Result<PairSample, StatsError> {
    let max = k * k.saturating_sub(1) / 2;
    if n > max {
        return Err(StatsError::PairCount {
            items: k,
            requested: n,
            max,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let can_connect = k <= 1 || n + 1 >= k;
    let mut attempts = 0;
    loop {
        attempts += 1;
        let mut pairs: Vec<(usize, usize)> = index::sample(&mut rng, max, n)
            .into_iter()
            .map(|r| unrank(r, k))
            .collect();
        pairs.shuffle(&mut rng);
        let connected = pairs_connect(k, &pairs);
        if connected || !can_connect || attempts == MAX_SAMPLE_ATTEMPTS {
            return Ok(PairSample {
                pairs,
                connected,
                attempts,
            });
        }
    }
}
