//! Command-line driver for the verification suites: configuration,
//! suite execution and machine-readable reports.

pub mod config;
pub mod report;
pub mod suites;

pub use config::{load_config, parse_config, ConfigError, ConfigOverrides, SuiteConfig, CONFIG_ENV};
pub use report::{Expect, Record, Report, REPORT_VERSION};
pub use suites::{parse_suites, run, run_suite, SUITES};
