//! JSON document model and subcommands behind the `bunchctl` binary.

pub mod commands;
pub mod doc;
pub mod error;
pub mod report;

pub use commands::{cmd_analyze, cmd_compare, cmd_gitfan, cmd_modify, cmd_reduce, Options};
pub use doc::InputDocument;
pub use error::{CliError, ErrorKind};
pub use report::ReportDocument;
