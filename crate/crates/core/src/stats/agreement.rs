use std::collections::BTreeMap;

use super::{ComparisonRecord, StatsError};

/// Mean pairwise percent agreement between annotators.
///
/// For each pair of annotators, the share of their commonly annotated
/// design pairs on which they picked the same design; annotator pairs with
/// nothing in common are skipped. A later record for the same design pair
/// by the same annotator replaces the earlier one.
pub fn agreement(records: &[ComparisonRecord]) -> Result<f64, StatsError> {
    let mut by_annotator: BTreeMap<&str, BTreeMap<(&str, &str), &str>> = BTreeMap::new();
    for r in records {
        by_annotator
            .entry(r.annotator_id.as_str())
            .or_default()
            .insert(r.pair_key(), r.chosen());
    }
    if by_annotator.len() < 2 {
        return Err(StatsError::NotEnoughAnnotators(by_annotator.len()));
    }

    let annotators: Vec<_> = by_annotator.values().collect();
    let mut scores = Vec::new();
    for (i, a) in annotators.iter().enumerate() {
        for b in &annotators[i + 1..] {
            let mut shared = 0usize;
            let mut same = 0usize;
            for (key, choice_a) in a.iter() {
                if let Some(choice_b) = b.get(key) {
                    shared += 1;
                    if choice_a == choice_b {
                        same += 1;
                    }
                }
            }
            if shared > 0 {
                scores.push(same as f64 / shared as f64);
            }
        }
    }
    if scores.is_empty() {
        return Err(StatsError::NoOverlap);
    }
    Ok(100.0 * scores.iter().sum::<f64>() / scores.len() as f64)
}
