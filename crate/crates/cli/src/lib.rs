//! Experiment harness: runs the clean and noisy KNN sweeps over a set of
//! datasets and metrics, and turns the per-cell records into tables.

pub mod compare;
pub mod config;
pub mod report;
pub mod runner;
pub mod summary;

pub use compare::{compare_to_reference, Comparison, TestKind};
pub use config::{ConfigError, ExperimentConfig};
pub use report::{emit_report, Format};
pub use runner::{load_datasets, run_clean_phase, run_noise_phase, RunRecord};
pub use summary::{summarize, top_metrics, MetricSummary, ScoreKind, PUBLISHED_TOP};
