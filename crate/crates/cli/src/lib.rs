//! JSON formats, reports and subcommands of the `cyclic-quiver` tool.

pub mod commands;
pub mod config;
pub mod formats;
pub mod report;

pub use commands::InputError;
pub use config::RunConfig;
pub use report::{Check, Report};
