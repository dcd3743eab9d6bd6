//! Bundle format, built-in examples and command implementations behind the
//! `dlf` binary.

pub mod bundle;
pub mod catalog;
pub mod commands;
pub mod error;

pub use bundle::{Bundle, Datum, Validation};
pub use commands::{run, Command, Format, Options, Outcome, Side};
pub use error::{CliError, Kind};
