use std::collections::{BTreeSet, HashMap};
use std::fmt::{self, Write as _};
use std::io;

use serde::{Deserialize, Serialize};

use super::{kendall_tau, BtResult, Polarity, StatsError};
use crate::metrics::{Metric, MetricReport};

/// One metric's agreement with the reference ranking. `tau` and `p_value`
/// are `None` when tau is undefined (all values of the metric tied).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationRow {
    pub metric: Metric,
    pub tau: Option<f64>,
    pub p_value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationReport {
    pub reference: String,
    pub items: usize,
    pub rows: Vec<CorrelationRow>,
}

#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    metric: Metric,
    tau: Option<f64>,
    p_value: Option<f64>,
    items: usize,
    reference: String,
}

/// Kendall's tau of each metric against the fitted human strengths.
///
/// Strengths fitted under [`Polarity::Preference`] measure simplicity and
/// are negated first, so a positive tau always means the metric rises with
/// perceived complexity.
pub fn correlate(
    reports: &[MetricReport],
    human: &BtResult,
    reference: &str,
) -> Result<CorrelationReport, StatsError> {
    let strength: HashMap<&str, f64> = human
        .items
        .iter()
        .map(String::as_str)
        .zip(human.strengths.iter().copied())
        .collect();
    let report_ids: BTreeSet<&str> = reports.iter().map(|r| r.design_id.as_str()).collect();
    let human_ids: BTreeSet<&str> = strength.keys().copied().collect();
    if report_ids.len() != reports.len() {
        return Err(StatsError::ItemSetMismatch("duplicate design ids in metric reports".into()));
    }
    if report_ids != human_ids {
        let missing: Vec<_> = human_ids.difference(&report_ids).take(5).collect();
        let extra: Vec<_> = report_ids.difference(&human_ids).take(5).collect();
        return Err(StatsError::ItemSetMismatch(format!(
            "ranked but without metrics: {missing:?}; metrics but not ranked: {extra:?}"
        )));
    }

    let sign = match human.polarity {
        Polarity::Complexity => 1.0,
        Polarity::Preference => -1.0,
    };
    let human_values: Vec<f64> = reports
        .iter()
        .map(|r| sign * strength[r.design_id.as_str()])
        .collect();

    let mut rows = Vec::with_capacity(Metric::ALL.len());
    for metric in Metric::ALL {
        let values: Vec<f64> = reports.iter().map(|r| metric.value(r)).collect();
        let row = match kendall_tau(&values, &human_values) {
            Ok(t) => CorrelationRow {
                metric,
                tau: Some(t.tau),
                p_value: Some(t.p_value),
            },
            Err(StatsError::TauUndefined) => CorrelationRow {
                metric,
                tau: None,
                p_value: None,
            },
            Err(e) => return Err(e),
        };
        rows.push(row);
    }
    Ok(CorrelationReport {
        reference: reference.to_string(),
        items: reports.len(),
        rows,
    })
}

impl CorrelationReport {
    pub fn row(&self, metric: Metric) -> Option<&CorrelationRow> {
        self.rows.iter().find(|r| r.metric == metric)
    }

    /// Metric with the largest defined tau.
    pub fn best(&self) -> Option<Metric> {
        self.rows
            .iter()
            .filter_map(|r| r.tau.map(|t| (r.metric, t)))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(m, _)| m)
    }

    pub fn write_csv<W: io::Write>(&self, writer: W) -> Result<(), StatsError> {
        let mut w = csv::Writer::from_writer(writer);
        for r in &self.rows {
            w.serialize(CsvRow {
                metric: r.metric,
                tau: r.tau,
                p_value: r.p_value,
                items: self.items,
                reference: self.reference.clone(),
            })?;
        }
        w.flush().map_err(|e| StatsError::Csv(e.to_string()))?;
        Ok(())
    }

    pub fn read_csv<R: io::Read>(reader: R) -> Result<Self, StatsError> {
        let mut rdr = csv::Reader::from_reader(reader);
        let mut rows = Vec::new();
        let mut meta: Option<(usize, String)> = None;
        for row in rdr.deserialize() {
            let row: CsvRow = row?;
            match &meta {
                None => meta = Some((row.items, row.reference.clone())),
                Some((items, reference)) if *items != row.items || *reference != row.reference => {
                    return Err(StatsError::Csv("rows disagree on items/reference".into()));
                }
                Some(_) => {}
            }
            rows.push(CorrelationRow {
                metric: row.metric,
                tau: row.tau,
                p_value: row.p_value,
            });
        }
        let (items, reference) = meta.ok_or_else(|| StatsError::Csv("no rows".into()))?;
        Ok(Self {
            reference,
            items,
            rows,
        })
    }

    /// Aligned text table with Metric / tau / p-value columns.
    pub fn to_table(&self) -> String {
        let width = Metric::ALL.iter().map(|m| m.title().len()).max().unwrap_or(0);
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<width$}  {:>14}  {:>14}",
            "Design Metric", "Kendall's Tau", "P-value"
        );
        let _ = writeln!(out, "{}", "-".repeat(width + 32));
        for r in &self.rows {
            let tau = r.tau.map_or("undefined".to_string(), |t| format!("{t:.10}"));
            let p = r.p_value.map_or("undefined".to_string(), format_p);
            let _ = writeln!(out, "{:<width$}  {:>14}  {:>14}", r.metric.title(), tau, p);
        }
        let _ = writeln!(out, "({} designs, reference: {})", self.items, self.reference);
        out
    }
}

fn format_p(p: f64) -> String {
    if p != 0.0 && p < 1e-3 {
        format!("{p:.2E}")
    } else {
        format!("{p:.10}")
    }
}

impl fmt::Display for CorrelationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_table())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::compute_all;
    use crate::lts::generate_random;

    fn reports() -> Vec<MetricReport> {
        (0..12)
            .map(|i| {
                let d = generate_random(3 + i, 1.2, 3, i as u64).unwrap().with_id(format!("d{i:02}"));
                compute_all(&d).unwrap()
            })
            .collect()
    }

    fn human_from(reports: &[MetricReport], metric: Metric, polarity: Polarity) -> BtResult {
        let sign = if polarity == Polarity::Complexity { 1.0 } else { -1.0 };
        let raw: Vec<f64> = reports.iter().map(|r| (sign * metric.value(r) / 10.0).exp()).collect();
        let sum: f64 = raw.iter().sum();
        BtResult {
            items: reports.iter().map(|r| r.design_id.clone()).collect(),
            strengths: raw.iter().map(|s| s / sum).collect(),
            ranking: vec![],
            iterations: 1,
            converged: true,
            smoothed: false,
            log_likelihood: 0.0,
            polarity,
        }
    }

    #[test]
    fn self_correlation_is_one() {
        let reports = reports();
        for polarity in [Polarity::Complexity, Polarity::Preference] {
            let human = human_from(&reports, Metric::Albin, polarity);
            let c = correlate(&reports, &human, "synthetic").unwrap();
            assert_eq!(c.rows.len(), 7);
            assert_eq!(c.row(Metric::Albin).unwrap().tau, Some(1.0));
            assert_eq!(c.best(), Some(Metric::Albin));
        }
    }

    #[test]
    fn csv_parses_back() {
        let reports = reports();
        let c = correlate(&reports, &human_from(&reports, Metric::Cyclomatic, Polarity::Complexity), "ref").unwrap();
        let mut buf = Vec::new();
        c.write_csv(&mut buf).unwrap();
        assert!(String::from_utf8_lossy(&buf).starts_with("metric,tau,p_value,items,reference\n"));
        assert_eq!(CorrelationReport::read_csv(buf.as_slice()).unwrap(), c);
    }

    #[test]
    fn undefined_rows_survive_csv_and_table() {
        let c = CorrelationReport {
            reference: "r".into(),
            items: 3,
            rows: vec![CorrelationRow {
                metric: Metric::StateSpace,
                tau: None,
                p_value: None,
            }],
        };
        let mut buf = Vec::new();
        c.write_csv(&mut buf).unwrap();
        assert_eq!(CorrelationReport::read_csv(buf.as_slice()).unwrap(), c);
        assert!(c.to_table().contains("undefined"));
    }

    #[test]
    fn table_has_seven_metric_lines() {
        let reports = reports();
        let c = correlate(&reports, &human_from(&reports, Metric::Albin, Polarity::Complexity), "ref").unwrap();
        let table = c.to_table();
        for m in Metric::ALL {
            assert_eq!(table.lines().filter(|l| l.starts_with(m.title())).count(), 1);
        }
    }

    #[test]
    fn mismatched_items() {
        let reports = reports();
        let human = human_from(&reports[..5], Metric::Albin, Polarity::Complexity);
        assert!(matches!(correlate(&reports, &human, "x"), Err(StatsError::ItemSetMismatch(_))));
    }

    #[test]
    fn p_formatting() {
        assert_eq!(format_p(1.68e-5), "1.68E-5");
        assert_eq!(format_p(0.3377263584), "0.3377263584");
    }
}
