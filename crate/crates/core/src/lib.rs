//! Proper odd colorings of graphs.
//!
//! A proper coloring is *odd* when every non-isolated vertex sees some color an odd
//! number of times in its open neighbourhood. This crate provides an exact solver for
//! the odd chromatic number, a constructive odd 9-coloring of plane graphs by local
//! reductions, and an auditor for the discharging rules behind that bound.

pub mod graph;
pub mod io;
pub mod cnf;
pub mod coloring;
pub mod discharge;
pub mod generators;
pub mod plane;
pub mod reducer;
pub mod solver;

pub use coloring::{Color, Coloring, ColoringError, OddReport};
pub use graph::{Graph, GraphError, Vertex, VertexMap};
pub use plane::{EmbedError, Face, FaceId, Faces, PlaneGraph};
