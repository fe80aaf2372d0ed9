//! Random valid layouts and drawings for property tests and benchmarks.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Signed;
use rand::Rng;

use crate::geometry::{Layout, Rat, Square};
use crate::graphs::Graph;
use crate::rectilinear::RectilinearDrawing;

/// Up to `n` squares at integer positions in `[0, side)²`, placed by
/// rejection. Ids are `0..len`.
pub fn grid_layout(rng: &mut impl Rng, n: usize, side: i64) -> Layout {
    let mut pts: Vec<(i64, i64)> = Vec::new();
    let mut tries = 0;
    while pts.len() < n && tries < 50 * n.max(1) {
        tries += 1;
        let p = (rng.random_range(0..side), rng.random_range(0..side));
        if pts.iter().all(|q| (p.0 - q.0).abs() > 1 || (p.1 - q.1).abs() > 1) {
            pts.push(p);
        }
    }
    Layout::grid(&pts)
}

/// Up to `n` squares at positions `a/q` with `q ≤ max_den` inside
/// `[0, side)²`.
pub fn free_layout(rng: &mut impl Rng, n: usize, max_den: i64, side: i64) -> Layout {
    let mut squares: Vec<Square> = Vec::new();
    let one = Rat::from_integer(1);
    let mut tries = 0;
    while squares.len() < n && tries < 50 * n.max(1) {
        tries += 1;
        let mut coord = || {
            let q = rng.random_range(1..=max_den);
            Rat::new(rng.random_range(0..side * q), q)
        };
        let (x, y) = (coord(), coord());
        if squares.iter().all(|s| (s.x - x).abs() > one || (s.y - y).abs() > one) {
            squares.push(Square::new(squares.len(), x, y));
        }
    }
    Layout::from_squares(crate::geometry::Kind::Free, squares)
}

/// A valid drawing: up to `n` distinct points in `[0, side)²`, and each pair
/// of points that are consecutive on a row or column joined with
/// probability `p`.
pub fn drawing(rng: &mut impl Rng, n: usize, side: i64, p: f64) -> RectilinearDrawing {
    let mut pts: BTreeSet<(i64, i64)> = BTreeSet::new();
    let mut tries = 0;
    while pts.len() < n && tries < 50 * n.max(1) {
        tries += 1;
        pts.insert((rng.random_range(0..side), rng.random_range(0..side)));
    }
    let pos: Vec<(i64, i64)> = pts.into_iter().collect();
    let mut rows: BTreeMap<i64, Vec<(i64, usize)>> = BTreeMap::new();
    let mut cols: BTreeMap<i64, Vec<(i64, usize)>> = BTreeMap::new();
    for (v, &(x, y)) in pos.iter().enumerate() {
        rows.entry(y).or_default().push((x, v));
        cols.entry(x).or_default().push((y, v));
    }
    let mut graph = Graph::new(pos.len());
    for line in rows.values_mut().chain(cols.values_mut()) {
        line.sort_unstable();
        for w in line.windows(2) {
            if rng.random_bool(p) {
                graph.add_edge(w[0].1, w[1].1).expect("distinct vertices");
            }
        }
    }
    RectilinearDrawing { graph, pos }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::validate_layout;
    use crate::rectilinear::drawing_valid;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_objects_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            assert!(validate_layout(&grid_layout(&mut rng, 8, 10)).is_ok());
            assert!(validate_layout(&free_layout(&mut rng, 8, 8, 6)).is_ok());
            assert!(drawing_valid(&drawing(&mut rng, 8, 6, 0.5)).is_ok());
        }
    }
}
