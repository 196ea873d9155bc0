//! Report building, output formatting and batch surveys behind the
//! `sfcgroup` binary.

pub mod cache;
pub mod exit;
pub mod report;
pub mod survey;

pub use exit::exit_code;
pub use report::{Analyzer, Report};

/// Crate version, part of every cache key.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
