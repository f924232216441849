//! Command layer of the `golodsyz` binary.

pub mod commands;
pub mod report;

pub use commands::{run, run_session, verify_checks, Check, Command, Options};
pub use report::{CheckResult, Report, Status};
