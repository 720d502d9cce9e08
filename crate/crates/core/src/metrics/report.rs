use std::io;

use serde::{Deserialize, Serialize};

use super::{avg_branching, redundancy, MetricError};
use crate::graph::{
    bfs_depth, girvan_newman, project_undirected, weak_components, LongestPathSearch,
};
use crate::lts::LtsDesign;

/// Column order of the metrics CSV export.
pub const CSV_HEADER: [&str; 13] = [
    "design_id",
    "N",
    "E",
    "P",
    "V",
    "state_space",
    "avg_branching",
    "max_depth",
    "L",
    "albin",
    "modularity_q",
    "redundancy_j",
    "identical_pairs",
];

/// All seven metrics for one design, plus the counts they are built from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub design_id: String,
    #[serde(rename = "N")]
    pub num_states: usize,
    #[serde(rename = "E")]
    pub num_transitions: usize,
    #[serde(rename = "P")]
    pub components: usize,
    #[serde(rename = "V")]
    pub cyclomatic: i64,
    #[serde(rename = "state_space")]
    pub state_space_size: usize,
    pub avg_branching: f64,
    pub max_depth: usize,
    #[serde(rename = "L")]
    pub longest_path: usize,
    pub albin: usize,
    pub modularity_q: f64,
    pub redundancy_j: f64,
    #[serde(rename = "identical_pairs")]
    pub identical_successor_pairs: usize,
}

impl MetricReport {
    /// `V = E - N + 2P` and `albin = N + 2E + L`.
    pub fn identities_hold(&self) -> bool {
        let (n, e, p) = (
            self.num_states as i64,
            self.num_transitions as i64,
            self.components as i64,
        );
        self.cyclomatic == e - n + 2 * p
            && self.albin == self.num_states + 2 * self.num_transitions + self.longest_path
    }
}

pub fn compute_all(design: &LtsDesign) -> Result<MetricReport, MetricError> {
    compute_with(design, &LongestPathSearch::default())
}

/// Like [`compute_all`] with explicit longest-path search limits.
pub fn compute_with(
    design: &LtsDesign,
    search: &LongestPathSearch,
) -> Result<MetricReport, MetricError> {
    let n = design.num_states();
    if n == 0 {
        return Err(MetricError::NoStates(design.id().to_string()));
    }
    let e = design.num_transitions();
    let p = weak_components(design).count;
    let longest_path = search.run(design)?;
    let (redundancy_j, identical_successor_pairs) = redundancy(design);
    Ok(MetricReport {
        design_id: design.id().to_string(),
        num_states: n,
        num_transitions: e,
        components: p,
        cyclomatic: e as i64 - n as i64 + 2 * p as i64,
        state_space_size: n,
        avg_branching: avg_branching(design)?,
        max_depth: bfs_depth(design, design.initial())?,
        longest_path,
        albin: n + 2 * e + longest_path,
        modularity_q: girvan_newman(&project_undirected(design)).q,
        redundancy_j,
        identical_successor_pairs,
    })
}

/// Writes reports as CSV with [`CSV_HEADER`] as the first row.
pub fn write_csv<W: io::Write>(writer: W, reports: &[MetricReport]) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(writer);
    if reports.is_empty() {
        w.write_record(CSV_HEADER)?;
    }
    for r in reports {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::{albin, cyclomatic, max_depth, modularity, Metric};

    fn fixtures() -> Vec<LtsDesign> {
        vec![
            LtsDesign::from_edges("chain", 3, &[(0, 1), (1, 2)]).unwrap(),
            LtsDesign::from_edges("triangle", 3, &[(0, 1), (1, 2), (2, 0)]).unwrap(),
            LtsDesign::from_edges("single", 1, &[]).unwrap(),
        ]
    }

    #[test]
    fn reports_are_consistent() {
        for d in fixtures() {
            let r = compute_all(&d).unwrap();
            assert!(r.identities_hold(), "{r:?}");
            assert_eq!(r.design_id, d.id());
            assert_eq!(r.cyclomatic, cyclomatic(&d));
            assert_eq!(r.albin, albin(&d).unwrap());
            assert_eq!(r.max_depth, max_depth(&d).unwrap());
            assert_eq!(r.modularity_q, modularity(&d));
        }
        let r = compute_all(&fixtures()[1]).unwrap();
        assert_eq!((r.num_states, r.num_transitions, r.components), (3, 3, 1));
        assert_eq!(Metric::Albin.value(&r), 11.0);
    }

    #[test]
    fn empty_design_is_an_error() {
        let d = LtsDesign::from_edges("none", 0, &[]).unwrap();
        assert!(matches!(compute_all(&d), Err(MetricError::NoStates(_))));
    }

    #[test]
    fn csv_header_and_rows() {
        let reports: Vec<_> = fixtures().iter().map(|d| compute_all(d).unwrap()).collect();
        let mut buf = Vec::new();
        write_csv(&mut buf, &reports).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER.join(","));
        assert_eq!(lines.next().unwrap(), "chain,3,2,1,1,3,0.6666666666666666,2,2,9,0.0,0.0,0");
        assert_eq!(lines.count(), 2);

        let mut buf = Vec::new();
        write_csv(&mut buf, &[]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().trim_end(), CSV_HEADER.join(","));
    }

    #[test]
    fn csv_reads_back() {
        let reports: Vec<_> = fixtures().iter().map(|d| compute_all(d).unwrap()).collect();
        let mut buf = Vec::new();
        write_csv(&mut buf, &reports).unwrap();
        let back: Vec<MetricReport> = csv::Reader::from_reader(buf.as_slice())
            .deserialize()
            .collect::<Result<_, _>>()
            .unwrap();
        assert_eq!(back, reports);
    }
}
