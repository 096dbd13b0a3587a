//! Command-line front end for `fpdim-core`: a text format for bound
//! quivers, JSON reports with re-checkable certificates, and verification
//! suites.

pub mod commands;
pub mod dsl;
pub mod error;
pub mod recheck;
pub mod report;
pub mod suites;

pub use commands::Outcome;
pub use error::CliError;
