//! Command-line front end: document parsing, subcommands and the
//! aggregate verification report.

pub mod commands;
pub mod document;
pub mod error;
pub mod field;
pub mod report;

pub use commands::Outcome;
pub use document::{parse, Document};
pub use error::CliError;
pub use field::FieldSpec;
pub use report::{run_report, Check, ReportDocument};
