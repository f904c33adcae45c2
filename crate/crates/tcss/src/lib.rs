//! Spec files, JSON reports and the `tcss` command line on top of
//! [`tcss_core`].

pub mod cli;
pub mod error;
pub mod report;
pub mod spec;

pub use error::Error;
