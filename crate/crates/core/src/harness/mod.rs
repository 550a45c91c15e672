//! Experiment orchestration: sampling, error metrics, method sweeps and
//! CSV reporting.

pub mod config;
mod experiment;
mod metrics;
mod report;

pub use config::{ExperimentConfig, GraphSource, MethodKind, MethodSpec};
pub use experiment::{load_graph_source, prepare, run_experiment, run_method, sample_nodes, MethodRun, Prepared};
pub use metrics::{rmae, rrmse};
pub use report::{format_error, read_report, render_csv, render_table, write_report, ReportRow, HEADER};
