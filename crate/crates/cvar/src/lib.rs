//! Command-line companion of `cvar-core`: file formats, configuration,
//! parallel bootstrap execution and the `cvar` subcommands.

pub use cvar_core as core;

pub mod artifact;
pub mod commands;
pub mod config;
pub mod error;
pub mod io;
pub mod plot;
pub mod report;
pub mod runner;
pub mod transforms;

pub use error::{Error, Result};
pub use runner::Parallel;
