//! Command line front end for `gscheme-core`: group file formats, the
//! input language, audit suites and exporters.

pub mod audit;
pub mod catalog;
pub mod dsl;
pub mod error;
pub mod export;
pub mod io;
pub mod session;

pub use error::{CliError, CliResult};
