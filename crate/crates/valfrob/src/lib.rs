//! Command-line frontend for `valfrob-core`: JSON descriptor files,
//! classification reports, property verification and the example gallery.

pub mod cli;
pub mod descriptor;
pub mod error;
pub mod gallery;
pub mod ops;
pub mod report;
pub mod verify;

pub use error::CliError;
