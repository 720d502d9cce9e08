use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{ComparisonRecord, StatsError};

/// How a recorded choice is turned into a win.
///
/// Annotators pick the design they find less complex. Under `Complexity`
/// the *other* design is credited, so strengths measure perceived
/// complexity; under `Preference` the chosen design is credited.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    #[default]
    Complexity,
    Preference,
}

impl FromStr for Polarity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "complexity" => Ok(Polarity::Complexity),
            "preference" => Ok(Polarity::Preference),
            other => Err(format!("unknown polarity `{other}` (expected complexity or preference)")),
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Polarity::Complexity => "complexity",
            Polarity::Preference => "preference",
        })
    }
}

/// Win counts `wins[i][j]`: how often item `i` beat item `j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonMatrix {
    pub items: Vec<String>,
    pub wins: Vec<Vec<u64>>,
    pub polarity: Polarity,
}

impl ComparisonMatrix {
    pub fn new(items: Vec<String>, polarity: Polarity) -> Self {
        let k = items.len();
        Self {
            items,
            wins: vec![vec![0; k]; k],
            polarity,
        }
    }

    /// Panics unless `wins` is square with a zero diagonal.
    pub fn from_wins(items: Vec<String>, wins: Vec<Vec<u64>>, polarity: Polarity) -> Self {
        assert_eq!(items.len(), wins.len());
        for (i, row) in wins.iter().enumerate() {
            assert_eq!(row.len(), items.len());
            assert_eq!(row[i], 0, "diagonal must be zero");
        }
        Self {
            items,
            wins,
            polarity,
        }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// `n_ij = w_ij + w_ji`.
    pub fn comparisons_between(&self, i: usize, j: usize) -> u64 {
        self.wins[i][j] + self.wins[j][i]
    }

    pub fn total_comparisons(&self) -> u64 {
        self.wins.iter().flatten().sum()
    }

    /// Same comparisons read with the opposite polarity.
    pub fn transposed(&self) -> Self {
        let k = self.len();
        let wins = (0..k)
            .map(|i| (0..k).map(|j| self.wins[j][i]).collect())
            .collect();
        Self {
            items: self.items.clone(),
            wins,
            polarity: match self.polarity {
                Polarity::Complexity => Polarity::Preference,
                Polarity::Preference => Polarity::Complexity,
            },
        }
    }
}

/// Accumulates records into a win matrix over `items`.
pub fn aggregate(
    items: &[String],
    records: &[ComparisonRecord],
    polarity: Polarity,
) -> Result<ComparisonMatrix, StatsError> {
    let index: HashMap<&str, usize> = items
        .iter()
        .enumerate()
        .map(|(i, id)| (id.as_str(), i))
        .collect();
    let lookup = |id: &str| {
        index
            .get(id)
            .copied()
            .ok_or_else(|| StatsError::UnknownDesign(id.to_string()))
    };
    let mut m = ComparisonMatrix::new(items.to_vec(), polarity);
    for r in records {
        r.validate()?;
        let chosen = lookup(r.chosen())?;
        let rejected = lookup(r.rejected())?;
        let (winner, loser) = match polarity {
            Polarity::Preference => (chosen, rejected),
            Polarity::Complexity => (rejected, chosen),
        };
        m.wins[winner][loser] += 1;
    }
    Ok(m)
}
