//! File formats, Java source scanning and the command-line driver around
//! `bitrace-core`.

pub mod commands;
pub mod config;
pub mod error;
pub mod io;
pub mod output;

pub use commands::{execute, Cli};
pub use error::{AppError, Result};
