//! JSON and Graphviz formats for `omnitoric`, and the command-line front
//! end built on them.

pub mod app;
pub mod doc;
pub mod dot;
pub mod error;
pub mod spec;

pub use app::{run, Cli, Command, Output};
pub use doc::{Document, Loaded, PairDoc, PolytopeDoc};
pub use error::CliError;
