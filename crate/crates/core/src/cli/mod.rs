//! Configuration, reports, and the check suite used by the `jackweight` binary.

pub mod commands;
mod config;
mod report;
pub mod suite;

pub use config::{ConfigLayer, RunConfig, THREADS_ENV};
pub use report::{matrix_out, write_file, MatrixOut, Report, SCHEMA_VERSION};
pub use suite::{run_check_suite, Section, SuiteReport};
