//! Comprehension-oriented complexity metrics for labeled transition systems,
//! together with the tooling to validate them against human judgement:
//! pairwise annotation storage, Bradley-Terry ranking and Kendall's tau.

pub mod corpus;
pub mod graph;
pub mod lts;
pub mod metrics;
pub mod stats;

pub use lts::{LtsDesign, Transition};
pub use metrics::{compute_all, Metric, MetricReport};
