//! Graph analytics for deterministic social-network graph classes: closure
//! numbers, maximal cliques, triangle density and tightly-knit families,
//! power-law-bounded degree distributions and distance structure.

pub mod cliques;
pub mod closure;
pub mod error;
pub mod generators;
pub mod graph;
pub mod metric;
pub mod plb;
pub mod tkf;
pub mod triangles;

pub use error::{Error, Result};
pub use graph::{DegreeDistribution, Graph, Vertex};
