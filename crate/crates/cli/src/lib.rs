//! Evaluation, tables, verification suites and file formats on top of
//! `kempner`.

pub mod app;
pub mod errata;
pub mod error;
pub mod eval;
pub mod parse;
pub mod record;
pub mod verify;

pub use error::{CliError, Result};
pub use record::{Format, OutputRecord};
