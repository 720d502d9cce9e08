use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{LtsDesign, Transition};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GenerateError {
    #[error("num_states must be positive")]
    NoStates,
    #[error("density must lie in (0, 2], got {0}")]
    Density(f64),
    #[error("label_count must be positive")]
    NoLabels,
}

/// Action names `a`..`z`, then `a26`, `a27`, ...
pub(crate) fn label_name(k: usize) -> String {
    if k < 26 {
        char::from(b'a' + k as u8).to_string()
    } else {
        format!("a{k}")
    }
}

/// Seeded random LTS with roughly `density * num_states` transitions.
///
/// Every state hangs off a random spanning arborescence rooted at state 0,
/// so the whole design is reachable from the initial state. The remaining
/// transitions pick source, label and target uniformly (self-loops and
/// parallel edges allowed).
pub fn generate_random(
    num_states: usize,
    density: f64,
    label_count: usize,
    seed: u64,
) -> Result<LtsDesign, GenerateError> {
    if num_states == 0 {
        return Err(GenerateError::NoStates);
    }
    if !(density > 0.0 && density <= 2.0) {
        return Err(GenerateError::Density(density));
    }
    if label_count == 0 {
        return Err(GenerateError::NoLabels);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels: Vec<String> = (0..label_count).map(label_name).collect();
    let target_count = (density * num_states as f64).round() as usize;

    let mut order: Vec<usize> = (1..num_states).collect();
    order.shuffle(&mut rng);
    let mut attached = Vec::with_capacity(num_states);
    attached.push(0);
    let mut transitions = Vec::with_capacity(target_count.max(num_states - 1));
    for state in order {
        let parent = attached[rng.random_range(0..attached.len())];
        let label = labels[rng.random_range(0..label_count)].clone();
        transitions.push(Transition::new(parent, label, state));
        attached.push(state);
    }
    while transitions.len() < target_count {
        let source = rng.random_range(0..num_states);
        let target = rng.random_range(0..num_states);
        let label = labels[rng.random_range(0..label_count)].clone();
        transitions.push(Transition::new(source, label, target));
    }
    transitions.shuffle(&mut rng);

    Ok(LtsDesign::new(format!("gen_{seed}"), num_states, 0, transitions)
        .expect("generator only emits in-range states"))
}
