//! Localization games on graphs and in the plane.

pub mod bush;
pub mod graph;
pub mod locating;
pub mod plane;
pub mod solver;
pub mod strategies;

pub use graph::{Graph, GraphError, VertexSet};
pub use solver::{Budget, SolveError};
