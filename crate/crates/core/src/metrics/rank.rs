use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Metric, MetricReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Least complex first.
    #[default]
    Asc,
    Desc,
}

impl FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "asc" | "ascending" => Ok(Direction::Asc),
            "desc" | "descending" => Ok(Direction::Desc),
            other => Err(format!("unknown direction `{other}` (expected asc or desc)")),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Asc => "asc",
            Direction::Desc => "desc",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedEntry {
    pub design_id: String,
    pub value: f64,
    pub rank: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedCorpus {
    pub metric: Metric,
    pub direction: Direction,
    pub entries: Vec<RankedEntry>,
}

/// 1-based ranks of `values` in ascending order; exact ties share the mean
/// of the positions they occupy.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && values[order[j]] == values[order[i]] {
            j += 1;
        }
        // positions i+1 ..= j
        let rank = (i + 1 + j) as f64 / 2.0;
        for &k in &order[i..j] {
            ranks[k] = rank;
        }
        i = j;
    }
    ranks
}

/// Stable sort of `reports` by `metric`.
pub fn rank_corpus(reports: &[MetricReport], metric: Metric, direction: Direction) -> RankedCorpus {
    let mut entries: Vec<RankedEntry> = reports
        .iter()
        .map(|r| RankedEntry {
            design_id: r.design_id.clone(),
            value: metric.value(r),
            rank: 0.0,
        })
        .collect();
    match direction {
        Direction::Asc => entries.sort_by(|a, b| a.value.total_cmp(&b.value)),
        Direction::Desc => entries.sort_by(|a, b| b.value.total_cmp(&a.value)),
    }
    let keyed: Vec<f64> = entries
        .iter()
        .map(|e| match direction {
            Direction::Asc => e.value,
            Direction::Desc => -e.value,
        })
        .collect();
    for (e, r) in entries.iter_mut().zip(average_ranks(&keyed)) {
        e.rank = r;
    }
    RankedCorpus {
        metric,
        direction,
        entries,
    }
}
