//! Benchmark protocol: corner matching, stability and noise-immunity factors,
//! timing, and report emission.

mod benchmark;
mod matching;
mod metrics;
mod report;

pub use benchmark::{
    load_directory, run_benchmark, run_benchmark_dir, BenchmarkConfig, EvalError, Input, Protocol,
};
pub use matching::{match_corners, MatchResult};
pub use metrics::{noise_immunity, noise_immunity_from_counts, stability, stability_from_counts};
pub use report::{Aggregate, FileError, MetricKind, MetricsReport, Record, CSV_HEADER};

/// Default correspondence radius in pixels.
pub const DEFAULT_MATCH_DIST: f64 = 3.0;
