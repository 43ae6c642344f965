//! Dicolouring toolkit for digraphs and defective edge colouring for multigraphs.
//!
//! Graph values live in [`digraph`]; every other module is a set of pure functions
//! over them that return checkable certificates.

pub mod brooks;
pub mod cli;
pub mod defective;
pub mod dicolour;
pub mod digraph;
pub mod error;
pub mod extremal;
pub mod heroes;
pub mod io;
pub mod local;

pub use digraph::{Digraph, Multigraph, VertexSetPartition};
pub use error::{Error, Result};
