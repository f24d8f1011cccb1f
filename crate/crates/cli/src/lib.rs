//! Command-line harness: configuration, group files, suite runs and reports.

pub mod config;
pub mod groupfile;
pub mod report;
pub mod suite;

pub use config::{ConfigError, Suite, SuiteConfig};
pub use groupfile::{parse_group_file, parse_group_text, GroupFileError};
pub use report::{parse_line, Format, Line, Record, Report, ReportError, Status, Summary};
pub use suite::{run_suite, RunError};
