//! Extension of partial 1-planar drawings at small vertex+edge deletion
//! distance: combinatorial drawing kernel, exhaustive oracle, flow and
//! dynamic-programming solvers, and a branching pipeline tying them together.

pub mod drawing;
pub mod generate;
pub mod graph;
pub mod codec;
pub mod oracle;
pub mod instance;
mod mutate;
pub mod verify;

#[cfg(test)]
pub(crate) mod testutil;

pub use drawing::{Anchor, Cell, Dart, DrawingError, NestItem, OnePlanarDrawing, PlanEdge, SplitChoice};
pub use graph::{EdgeId, Graph, VertexId, DUMMY_BASE};
