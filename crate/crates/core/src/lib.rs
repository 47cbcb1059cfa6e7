//! Frontier-centric bulk-synchronous graph analytics.
//!
//! Graph algorithms are written as sequences of operators (advance, filter,
//! segmented intersection, compute) over frontiers of vertex or edge ids.
//! Each operator is internally data-parallel; with the `parallel` feature off,
//! or inside [`par::sequential`], everything runs on the calling thread.

pub mod atomic;
pub mod error;
pub mod frontier;
pub mod graph;
pub mod load_balance;
pub mod operators;
pub mod par;
pub mod primitives;
pub mod priority_queue;
pub mod stats;
pub mod traversal;

pub use error::{GraphError, OperatorError, PrimitiveError};
pub use frontier::{Frontier, FrontierKind, FrontierPair, StatusBitmap, UNVISITED};
pub use graph::{CooGraph, CsrGraph, EdgeId, VertexId, Weight};
pub use load_balance::Strategy;
pub use stats::{compute_mteps, Primitive, RunStats};
