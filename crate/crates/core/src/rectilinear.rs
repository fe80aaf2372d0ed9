//! Rectilinear drawings and their conversion to and from grid layouts.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::geometry::{edge_set, remove_surplus, validate_layout, GeometryError, Kind, Layout, Square};
use crate::graphs::Graph;

/// A graph with an integer point per vertex. Vertex `v` sits at `pos[v]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RectilinearDrawing {
    pub graph: Graph,
    pub pos: Vec<(i64, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DrawingViolation {
    /// The number of points differs from the number of vertices.
    PointCount { vertices: usize, points: usize },
    SamePoint(usize, usize),
    NotAxisParallel(usize, usize),
    /// Vertex `on` lies on the segment of edge `{u, v}`.
    VertexOnEdge { on: usize, u: usize, v: usize },
}

impl fmt::Display for DrawingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DrawingViolation::PointCount { vertices, points } => {
                write!(f, "{vertices} vertices but {points} points")
            }
            DrawingViolation::SamePoint(u, v) => write!(f, "vertices {u} and {v} share a point"),
            DrawingViolation::NotAxisParallel(u, v) => write!(f, "edge {{{u}, {v}}} is not axis-parallel"),
            DrawingViolation::VertexOnEdge { on, u, v } => {
                write!(f, "vertex {on} lies on edge {{{u}, {v}}}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DrawingReport {
    pub violations: Vec<DrawingViolation>,
}

impl DrawingReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for DrawingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return f.write_str("ok");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join("; "))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RectilinearError {
    #[error("invalid drawing: {0}")]
    InvalidDrawing(DrawingReport),
    #[error("layout ids must be 0..{0}")]
    IdMismatch(usize),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

fn on_segment(p: (i64, i64), a: (i64, i64), b: (i64, i64)) -> bool {
    if a.0 == b.0 {
        p.0 == a.0 && p.1 >= a.1.min(b.1) && p.1 <= a.1.max(b.1)
    } else if a.1 == b.1 {
        p.1 == a.1 && p.0 >= a.0.min(b.0) && p.0 <= a.0.max(b.0)
    } else {
        false
    }
}

pub fn drawing_valid(d: &RectilinearDrawing) -> DrawingReport {
    let mut violations = Vec::new();
    let n = d.graph.n();
    if d.pos.len() != n {
        violations.push(DrawingViolation::PointCount { vertices: n, points: d.pos.len() });
        return DrawingReport { violations };
    }
    let mut seen: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    for (v, &p) in d.pos.iter().enumerate() {
        if let Some(&u) = seen.get(&p) {
            violations.push(DrawingViolation::SamePoint(u, v));
        } else {
            seen.insert(p, v);
        }
    }
    for (u, v) in d.graph.edges() {
        let (a, b) = (d.pos[u], d.pos[v]);
        if a.0 != b.0 && a.1 != b.1 {
            violations.push(DrawingViolation::NotAxisParallel(u, v));
            continue;
        }
        for (w, &p) in d.pos.iter().enumerate() {
            if w != u && w != v && on_segment(p, a, b) {
                violations.push(DrawingViolation::VertexOnEdge { on: w, u, v });
            }
        }
    }
    DrawingReport { violations }
}

/// Squares become points and visibilities become edges. Square ids are
/// mapped to vertices in increasing order.
pub fn layout_to_drawing(l: &Layout) -> Result<RectilinearDrawing, RectilinearError> {
    if l.kind() != Kind::Grid {
        return Err(GeometryError::NotGrid.into());
    }
    let report = validate_layout(l);
    if !report.is_ok() {
        return Err(GeometryError::Invalid(report).into());
    }
    let sorted = l.sorted();
    let index: BTreeMap<usize, usize> = sorted.squares().iter().enumerate().map(|(i, s)| (s.id, i)).collect();
    let pos = sorted.squares().iter().map(|s| (s.x.to_integer(), s.y.to_integer())).collect();
    let mut graph = Graph::new(sorted.len());
    for (a, b) in edge_set(l)? {
        graph.add_edge(index[&a], index[&b]).expect("ids are in range");
    }
    Ok(RectilinearDrawing { graph, pos })
}

/// Move the drawing to the non-negative quadrant with minimum coordinates 0.
pub fn normalize_drawing(d: &RectilinearDrawing) -> RectilinearDrawing {
    let mx = d.pos.iter().map(|p| p.0).min().unwrap_or(0);
    let my = d.pos.iter().map(|p| p.1).min().unwrap_or(0);
    RectilinearDrawing { graph: d.graph.clone(), pos: d.pos.iter().map(|&(x, y)| (x - mx, y - my)).collect() }
}

/// Replace every coordinate by its rank among the distinct values on its
/// axis. Order along rows and columns is kept, so validity is too.
pub fn compact_drawing(d: &RectilinearDrawing) -> RectilinearDrawing {
    let xs: BTreeSet<i64> = d.pos.iter().map(|p| p.0).collect();
    let ys: BTreeSet<i64> = d.pos.iter().map(|p| p.1).collect();
    let rx: BTreeMap<i64, i64> = xs.into_iter().zip(0..).collect();
    let ry: BTreeMap<i64, i64> = ys.into_iter().zip(0..).collect();
    RectilinearDrawing { graph: d.graph.clone(), pos: d.pos.iter().map(|&(x, y)| (rx[&x], ry[&y])).collect() }
}

/// Scale by two and put a square on every point. The layout sees every edge
/// of the drawing and possibly more.
pub fn drawing_to_weak_layout(d: &RectilinearDrawing) -> Result<Layout, RectilinearError> {
    let report = drawing_valid(d);
    if !report.is_ok() {
        return Err(RectilinearError::InvalidDrawing(report));
    }
    let d = normalize_drawing(d);
    let pts: Vec<(i64, i64)> = d.pos.iter().map(|&(x, y)| (2 * x, 2 * y)).collect();
    Ok(Layout::grid(&pts))
}

/// Delete the visibilities of `l` that are not edges of `g`. Square ids must
/// be the vertices of `g`.
pub fn strengthen_weak_layout(l: &Layout, g: &Graph) -> Result<Layout, RectilinearError> {
    let ids: Vec<usize> = l.sorted().squares().iter().map(|s: &Square| s.id).collect();
    if ids != (0..g.n()).collect::<Vec<_>>() {
        return Err(RectilinearError::IdMismatch(g.n()));
    }
    Ok(remove_surplus(l, &g.edge_set())?)
}
