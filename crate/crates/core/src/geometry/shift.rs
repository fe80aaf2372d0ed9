//! Edge and vertex deletion in grid layouts by shifting squares.

use std::collections::BTreeSet;

use super::layout::ensure_valid;
use super::visibility::{facts_to_edges, relation_unchecked};
use super::{Axis, GeometryError, Kind, Layout, Rat, Square};

/// Remove the visibility between `u` and `v` while keeping every other one.
///
/// For a vertical visibility with `upper` above `lower`, every square right of
/// `lower`'s column, and every square in that column at or below `lower`,
/// moves one unit to the right. Horizontal visibilities are handled on the
/// transposed layout.
pub fn delete_edge_shift(layout: &Layout, u: usize, v: usize) -> Result<Layout, GeometryError> {
    if layout.kind() != Kind::Grid {
        return Err(GeometryError::NotGrid);
    }
    layout.index_of(u)?;
    layout.index_of(v)?;
    ensure_valid(layout)?;
    let fact = relation_unchecked(layout)
        .into_iter()
        .find(|f| (f.from == u && f.to == v) || (f.from == v && f.to == u))
        .ok_or(GeometryError::NotAnEdge(u.min(v), u.max(v)))?;
    Ok(match fact.axis {
        Axis::Vertical => shift_below(layout, fact.to),
        Axis::Horizontal => {
            // Transposed, the left square `from` becomes the lower one.
            shift_below(&layout.transpose(), fact.from).transpose()
        }
    })
}

fn shift_below(layout: &Layout, lower: usize) -> Layout {
    let one = Rat::from_integer(1);
    let pivot = layout.get(lower).expect("lower square present").clone();
    let squares = layout
        .squares()
        .iter()
        .map(|s| {
            if s.x > pivot.x || (s.x == pivot.x && s.y <= pivot.y) {
                Square::new(s.id, s.x + one, s.y)
            } else {
                s.clone()
            }
        })
        .collect();
    Layout::from_squares(layout.kind(), squares)
}

/// Delete surplus visibilities one at a time, in lexicographic order, until
/// the layout realises exactly `target`. Every step must remove exactly one
/// edge and keep all others.
pub fn remove_surplus(layout: &Layout, target: &BTreeSet<(usize, usize)>) -> Result<Layout, GeometryError> {
    if layout.kind() != Kind::Grid {
        return Err(GeometryError::NotGrid);
    }
    ensure_valid(layout)?;
    let mut cur = layout.clone();
    let mut edges = facts_to_edges(&relation_unchecked(&cur));
    if let Some(&(a, b)) = target.difference(&edges).next() {
        return Err(GeometryError::NotSubgraph(a, b));
    }
    while let Some(&(a, b)) = edges.difference(target).next() {
        let next = delete_edge_shift(&cur, a, b)?;
        let next_edges = facts_to_edges(&relation_unchecked(&next));
        let mut expected = edges.clone();
        expected.remove(&(a, b));
        if next_edges != expected {
            return Err(GeometryError::ShiftBroken(a, b));
        }
        cur = next;
        edges = next_edges;
    }
    Ok(cur)
}

/// Remove square `v` and then shift away the visibilities that appear
/// through the gap it leaves.
pub fn delete_vertex(layout: &Layout, v: usize) -> Result<Layout, GeometryError> {
    if layout.kind() != Kind::Grid {
        return Err(GeometryError::NotGrid);
    }
    ensure_valid(layout)?;
    let before = facts_to_edges(&relation_unchecked(layout));
    let target: BTreeSet<(usize, usize)> = before.into_iter().filter(|&(a, b)| a != v && b != v).collect();
    let mut rest = layout.clone();
    rest.remove(v)?;
    remove_surplus(&rest, &target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::edge_set;

    #[test]
    fn vertical_edge_of_path_is_removed() {
        let l = Layout::grid(&[(0, 0), (0, 2), (0, 4)]);
        let out = delete_edge_shift(&l, 1, 2).unwrap();
        assert_eq!(edge_set(&out).unwrap(), BTreeSet::from([(0, 1)]));
    }

    #[test]
    fn horizontal_edge_is_removed() {
        let l = Layout::grid(&[(0, 0), (2, 0), (4, 0), (2, 2)]);
        let out = delete_edge_shift(&l, 0, 1).unwrap();
        assert_eq!(edge_set(&out).unwrap(), BTreeSet::from([(1, 2), (1, 3)]));
        assert!(out.squares().iter().all(|s| *s.x.numer() >= 0 && *s.y.numer() >= 0));
    }

    #[test]
    fn deleting_middle_of_row_leaves_two_isolated_squares() {
        let l = Layout::grid(&[(0, 0), (2, 0), (4, 0)]);
        let out = delete_vertex(&l, 1).unwrap();
        assert_eq!(out.len(), 2);
        assert!(edge_set(&out).unwrap().is_empty());
    }

    #[test]
    fn deleting_only_square_gives_empty_layout() {
        let out = delete_vertex(&Layout::grid(&[(3, 3)]), 0).unwrap();
        assert!(out.is_empty());
    }

    #[test]
    fn missing_edge_is_an_error() {
        let l = Layout::grid(&[(0, 0), (2, 2)]);
        assert_eq!(delete_edge_shift(&l, 0, 1), Err(GeometryError::NotAnEdge(0, 1)));
    }
}
