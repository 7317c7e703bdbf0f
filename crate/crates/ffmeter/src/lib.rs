//! Command-line front end for `ffmeter-core`.
//!
//! The binary is a thin wrapper around [`run`]; the parsing, report and
//! sweep-runner layers are public so integration tests can drive them.

pub mod cli;
pub mod parse;
pub mod report;
pub mod runner;

pub use cli::{render, run, Rendered};
