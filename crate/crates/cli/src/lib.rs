//! Session language and report formatting for the `chi` command-line tool.

pub mod report;
pub mod run;
pub mod session;
pub mod suite;
