//! Command-line front end for the `syzygia` library.

pub mod commands;
pub mod dsl;

pub use commands::{exit_code, Flags, Outcome, REPORT_SCHEMA};
