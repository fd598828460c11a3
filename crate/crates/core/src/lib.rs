//! Tetrahedral graphs, tight components and squared tight paths in dense
//! 3-uniform hypergraphs.

pub mod bitset;
pub mod combinatorics;
pub mod error;
pub mod gadgets;
pub mod generators;
pub mod hypergraph;
pub mod io;
pub mod report;
pub mod search;
pub mod tight;
pub mod verify;
pub mod walks;

pub use bitset::VertexSet;
pub use error::{Error, Result};
pub use hypergraph::{FourGraph, Neighbourhood, ThreeGraph, TwoGraph, UniformGraph};
