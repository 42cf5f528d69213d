//! Exact computations around pathwidth of outerplanar graphs: two
//! independent pathwidth engines, polygon-triangulation models with weak
//! duals, extremal quantities (largest always-thin order, maximum induced
//! subgraphs of bounded width), and certified extraction of large induced
//! subgraphs meeting proven ratio bounds.
//!
//! Everything is deterministic given inputs and seeds; the `parallel`
//! feature (default) switches the hot loops to rayon without changing any
//! result.

pub mod bagsearch;
pub mod bitset;
pub mod canon;
pub mod codec;
pub mod decomposition;
pub mod error;
pub mod exec;
pub mod extract;
pub mod extremal;
pub mod graph;
pub mod mop;
pub mod pathwidth;
pub mod recognize;
pub mod trees;

pub use bitset::VertexSet;
pub use decomposition::{validate_path_decomposition, PathDecomposition, Violation};
pub use error::{Error, Result};
pub use graph::Graph;
pub use mop::Mop;
