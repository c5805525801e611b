//! Command-line front end and file formats for `mnl-core`.
//!
//! Every subcommand exits with 0 when all gating checks pass, 1 when an
//! algebraic property is violated, and 2 on usage or input errors.

#![forbid(unsafe_code)]

pub mod cli;
pub mod commands;
pub mod formats;
pub mod report;

pub use cli::{execute, Execution};
