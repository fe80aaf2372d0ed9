//! Unit square visibility layouts: exact geometry, recognition search,
//! rectilinear drawings and the two hardness reductions with witness layouts.

pub mod fixtures;
pub mod geometry;
pub mod graphs;
pub mod io;
pub mod random;
pub mod recognize;
pub mod rectilinear;
pub mod reduce;

pub use geometry::{Axis, Kind, Layout, Rat, Square, VisibilityFact};
pub use graphs::{Class, Graph, Verdict};
