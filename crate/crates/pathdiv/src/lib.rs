//! File formats, reports and the command-line pipeline around
//! [`pathdiv_core`].
//!
//! * [`ingest`] reads and writes the roster, route, policy and trace formats.
//! * [`csv`] renders matrices, per-origin statistics, histograms and
//!   adjacency matrices.
//! * [`dot`] renders digraphs for Graphviz.
//! * [`parallel`] computes the pairwise matrix with one task per origin.
//! * [`cli`] wires everything into the `pathdiv` subcommands.

pub mod cli;
pub mod csv;
pub mod dot;
mod error;
pub mod ingest;
pub mod parallel;
pub mod synth;

pub use error::FormatError;
pub use pathdiv_core as core;
