//! Command-line front end: JSON and text reports over the core library.

pub mod app;
pub mod knotfile;
pub mod report;

pub use app::{run, Outcome, EXIT_FAILED, EXIT_OK, EXIT_USAGE};
