//! Config-driven runner for the `fracpx` solvers: reads a TOML config (or a
//! previous run's `manifest.json`), runs one subcommand, and writes
//! `manifest.json`, `report.json` and CSV outputs to a directory.

pub mod config;
pub mod error;
mod output;
pub mod run;
pub mod verify;

pub use config::{Manifest, RunConfig};
pub use error::CliError;
pub use run::{execute, Command, Invocation, RunSummary};
