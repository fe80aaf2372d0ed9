//! Hardness reductions: grid layouts in a bounded box from 3-Partition and
//! free layouts from NAE-3SAT, each with the graph, a solver for small
//! instances, and the layout built from a solution.

mod nae;
mod nae_graph;
mod partition;

use thiserror::Error;

pub use nae::{
    normalize_nae, solve_clauses, solve_nae, spacing_violations, Assignment, Clause, Cnf, NaeFormula, NormalizeMode,
    Origin, SpacingViolation,
};
pub use nae_graph::{reduce_nae, witness_layout_nae, Gadget, NaeIndex};
pub use partition::{
    frame_graph, frame_layout, reduce_3partition, solve_3partition, witness_layout_3partition, FrameIndex, Partition,
    ThreePartitionInstance,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReduceError {
    #[error("invalid 3-partition instance: {0}")]
    Instance(String),
    #[error("invalid partition: {0}")]
    Partition(String),
    #[error("invalid formula: {0}")]
    Formula(String),
    #[error("invalid assignment: {0}")]
    Assignment(String),
}
