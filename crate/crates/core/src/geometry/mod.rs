//! Unit square layouts with exact rational positions.
//!
//! A square is identified by a non-negative id and its lower-left corner; the
//! side length is always 1. Squares are closed sets, so two squares that touch
//! along an edge or at a corner are not disjoint and the layout is invalid.

mod crossings;
mod layout;
mod oracle;
mod shift;
mod visibility;

pub use crossings::{layout_crossings, Crossing};
pub use layout::{validate_layout, Kind, Layout, Square, ValidationReport, Violation};
pub use oracle::visibility_oracle;
pub use shift::{delete_edge_shift, delete_vertex, remove_surplus};
pub use visibility::{edge_set, extract_graph, sees, visibility_channel, visibility_relation, Axis, VisibilityFact};

use thiserror::Error;

/// Exact rational coordinate. `Ratio` keeps values in lowest terms with a
/// positive denominator.
pub type Rat = num_rational::Ratio<i64>;

/// Shorthand for building a rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

/// Shorthand for an integral rational.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(n)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("unknown square id {0}")]
    UnknownId(usize),
    #[error("a square cannot be compared with itself (id {0})")]
    SameId(usize),
    #[error("invalid layout: {0}")]
    Invalid(ValidationReport),
    #[error("operation is defined for grid layouts only")]
    NotGrid,
    #[error("{{{0}, {1}}} is not a visibility of the layout")]
    NotAnEdge(usize, usize),
    #[error("target graph is not a subgraph of the layout graph: {{{0}, {1}}} is missing")]
    NotSubgraph(usize, usize),
    #[error("shift did not remove exactly one edge while deleting {{{0}, {1}}}")]
    ShiftBroken(usize, usize),
}
