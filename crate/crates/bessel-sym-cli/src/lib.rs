//! Sweep driver behind the `bessel-sym` binary: expands parameter grids,
//! evaluates every identity instance exactly once, and emits deterministic
//! JSON/CSV verification reports.

pub mod config;
pub mod report;
pub mod sweep;

pub use config::{ConfigError, IntRange, OutputFormat, Scalar, SweepConfig};
pub use report::emit_report;
pub use sweep::{run_sweep, Outcome, Summary, SweepRecord, SweepReport};
