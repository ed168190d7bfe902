//! Exact coloring and maximum clique for square-free Grenoble graphs.
//!
//! A Grenoble graph has no odd hole, no odd antihole, and no odd prism;
//! this crate handles the square-free members of that class. Membership is
//! checked by [`detect::classify`], and accepted graphs are colored by
//! [`decompose::color`], which repeatedly grows a maximal hyperprism, reads
//! an even-pair sequence off its smallest good strip, splits the graph along
//! the associated cutset, and merges the recursive colorings.

pub mod budget;
pub mod chordless;
pub mod corpus;
pub mod decompose;
pub mod detect;
pub mod error;
pub mod evenpair;
pub mod generate;
pub mod graph;
pub mod hyperprism;
pub mod io;
pub mod oracle;

#[cfg(test)]
pub(crate) mod testutil;

pub use budget::Budget;
pub use error::{Error, Result};
pub use graph::{Graph, Parity, Path, VertSet};
