//! Configuration-driven front end for the `nehari` crate: `profile`, `solve`,
//! `verify` and `scan` commands over a TOML problem description.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

pub use commands::{run, Command, Outcome};
pub use config::{parse_config, parse_config_str, to_toml, RunConfig};
pub use error::{CliError, EXIT_HYPOTHESIS, EXIT_NUMERICAL, EXIT_USAGE};
