//! Modular decomposition of small graphs and minimal prime extensions.
//!
//! A graph is prime when it has at least four vertices and every module is
//! trivial. This crate computes the modular decomposition tree, evaluates
//! the least number of vertices that must be added to make a graph prime,
//! builds extensions reaching that number, and checks everything against
//! brute-force searches.

pub mod bound;
pub mod construct;
pub mod error;
pub mod format;
pub mod graph;
pub mod mdtree;
pub mod modules;
pub mod oracle;
mod vertex_set;

pub use error::{Error, Result};
pub use graph::{Graph, GraphBuilder};
pub use vertex_set::{VertexId, VertexSet, MAX_ORDER};
