use std::collections::BTreeSet;

use super::layout::ensure_valid;
use super::{GeometryError, Layout, Rat};
use crate::graphs::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    Horizontal,
    Vertical,
}

/// A directed visibility. Horizontal `from → to`: `from` is the left square.
/// Vertical `from → to`: `from` is the upper square.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VisibilityFact {
    pub from: usize,
    pub to: usize,
    pub axis: Axis,
}

/// Whether some part of `[lo, hi]` of positive length avoids every interval.
pub(crate) fn residue_positive(lo: Rat, hi: Rat, intervals: &mut [(Rat, Rat)]) -> bool {
    if hi <= lo {
        return false;
    }
    intervals.sort();
    let mut cur = lo;
    for &(a, b) in intervals.iter() {
        if a > cur {
            return true;
        }
        if b > cur {
            cur = b;
            if cur >= hi {
                return false;
            }
        }
    }
    cur < hi
}

/// Horizontal test on raw coordinates: does square `i` see square `j` to its
/// right.
fn sees_right(pts: &[(Rat, Rat)], i: usize, j: usize) -> bool {
    let one = Rat::from_integer(1);
    let (xi, yi) = pts[i];
    let (xj, yj) = pts[j];
    if xi >= xj {
        return false;
    }
    let lo = yi.max(yj);
    let hi = yi.min(yj) + one;
    if hi <= lo {
        return false;
    }
    // Blockers: projection meets the closed strip [xi + 1, xj].
    let mut blocks: Vec<(Rat, Rat)> = pts
        .iter()
        .enumerate()
        .filter(|&(k, &(xk, _))| k != i && k != j && xk >= xi && xk <= xj)
        .map(|(_, &(_, yk))| (yk, yk + one))
        .filter(|&(a, b)| b > lo && a < hi)
        .collect();
    residue_positive(lo, hi, &mut blocks)
}

/// Directed visibility test. Horizontal: `i` sees `j` from the left.
/// Vertical: `i` sees `j` from above.
pub fn sees(layout: &Layout, i: usize, j: usize, axis: Axis) -> Result<bool, GeometryError> {
    if i == j {
        return Err(GeometryError::SameId(i));
    }
    let a = layout.index_of(i)?;
    let b = layout.index_of(j)?;
    ensure_valid(layout)?;
    let pts: Vec<(Rat, Rat)> = match axis {
        Axis::Horizontal => layout.squares().iter().map(|s| (s.x, s.y)).collect(),
        // Upper square first: transpose, then `b` must lie left of `a`.
        Axis::Vertical => layout.squares().iter().map(|s| (s.y, s.x)).collect(),
    };
    Ok(match axis {
        Axis::Horizontal => sees_right(&pts, a, b),
        Axis::Vertical => sees_right(&pts, b, a),
    })
}

/// The widest open part of the band between the two squares of `fact` that
/// no other square blocks, as an interval of the cross axis (y for
/// horizontal facts, x for vertical ones). `None` if the fact does not hold.
pub fn visibility_channel(layout: &Layout, fact: VisibilityFact) -> Result<Option<(Rat, Rat)>, GeometryError> {
    if fact.from == fact.to {
        return Err(GeometryError::SameId(fact.from));
    }
    let a = layout.index_of(fact.from)?;
    let b = layout.index_of(fact.to)?;
    ensure_valid(layout)?;
    let one = Rat::from_integer(1);
    let pts: Vec<(Rat, Rat)> = match fact.axis {
        Axis::Horizontal => layout.squares().iter().map(|s| (s.x, s.y)).collect(),
        Axis::Vertical => layout.squares().iter().map(|s| (s.y, s.x)).collect(),
    };
    let (i, j) = match fact.axis {
        Axis::Horizontal => (a, b),
        Axis::Vertical => (b, a),
    };
    let ((xi, yi), (xj, yj)) = (pts[i], pts[j]);
    if xi >= xj {
        return Ok(None);
    }
    let (lo, hi) = (yi.max(yj), yi.min(yj) + one);
    let mut blocks: Vec<(Rat, Rat)> = pts
        .iter()
        .enumerate()
        .filter(|&(k, &(xk, _))| k != i && k != j && xk >= xi && xk <= xj)
        .map(|(_, &(_, yk))| (yk, yk + one))
        .collect();
    blocks.sort();
    let mut best: Option<(Rat, Rat)> = None;
    let mut cur = lo;
    let mut offer = |a: Rat, b: Rat| {
        if b > a && best.map_or(true, |(p, q)| b - a > q - p) {
            best = Some((a, b));
        }
    };
    for &(a, b) in &blocks {
        if a > cur {
            offer(cur, a.min(hi));
        }
        cur = cur.max(b);
        if cur >= hi {
            break;
        }
    }
    offer(cur, hi);
    Ok(best)
}

fn merge_into(covered: &mut Vec<(Rat, Rat)>, iv: (Rat, Rat)) {
    covered.push(iv);
    covered.sort();
    let mut out: Vec<(Rat, Rat)> = Vec::with_capacity(covered.len());
    for &(a, b) in covered.iter() {
        match out.last_mut() {
            Some(last) if a <= last.1 => last.1 = last.1.max(b),
            _ => out.push((a, b)),
        }
    }
    *covered = out;
}

/// All index pairs `(i, j)` with `i` seeing `j` to its right. Sweeps each
/// square's band left to right and stops once the band is fully covered.
fn rightward_pairs(pts: &[(Rat, Rat)]) -> Vec<(usize, usize)> {
    let one = Rat::from_integer(1);
    let n = pts.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| pts[a].0.cmp(&pts[b].0));
    let mut out = Vec::new();
    for (pos, &i) in order.iter().enumerate() {
        let (xi, yi) = pts[i];
        let (blo, bhi) = (yi, yi + one);
        let clip = |y: Rat| -> Option<(Rat, Rat)> {
            let (a, b) = (y.max(blo), (y + one).min(bhi));
            (a < b).then_some((a, b))
        };
        let mut covered: Vec<(Rat, Rat)> = Vec::new();
        // Squares sharing the x-coordinate of `i` block everything to its right.
        let mut back = pos;
        while back > 0 && pts[order[back - 1]].0 == xi {
            back -= 1;
            if let Some(iv) = clip(pts[order[back]].1) {
                merge_into(&mut covered, iv);
            }
        }
        let mut p = pos + 1;
        while p < n && pts[order[p]].0 == xi {
            if let Some(iv) = clip(pts[order[p]].1) {
                merge_into(&mut covered, iv);
            }
            p += 1;
        }
        while p < n {
            if covered.len() == 1 && covered[0].0 <= blo && covered[0].1 >= bhi {
                break;
            }
            let gx = pts[order[p]].0;
            let mut q = p;
            while q < n && pts[order[q]].0 == gx {
                q += 1;
            }
            let group = &order[p..q];
            for &j in group {
                let yj = pts[j].1;
                let lo = yi.max(yj);
                let hi = yi.min(yj) + one;
                if hi <= lo {
                    continue;
                }
                let mut blocks: Vec<(Rat, Rat)> = covered.clone();
                for &k in group {
                    if k != j {
                        if let Some(iv) = clip(pts[k].1) {
                            blocks.push(iv);
                        }
                    }
                }
                if residue_positive(lo, hi, &mut blocks) {
                    out.push((i, j));
                }
            }
            for &k in group {
                if let Some(iv) = clip(pts[k].1) {
                    merge_into(&mut covered, iv);
                }
            }
            p = q;
        }
    }
    out
}

/// The complete set of directed visibilities of a valid layout.
pub fn visibility_relation(layout: &Layout) -> Result<BTreeSet<VisibilityFact>, GeometryError> {
    ensure_valid(layout)?;
    Ok(relation_unchecked(layout))
}

pub(crate) fn relation_unchecked(layout: &Layout) -> BTreeSet<VisibilityFact> {
    let sq = layout.squares();
    let mut facts = BTreeSet::new();
    let pts: Vec<(Rat, Rat)> = sq.iter().map(|s| (s.x, s.y)).collect();
    for (i, j) in rightward_pairs(&pts) {
        facts.insert(VisibilityFact { from: sq[i].id, to: sq[j].id, axis: Axis::Horizontal });
    }
    let tr: Vec<(Rat, Rat)> = sq.iter().map(|s| (s.y, s.x)).collect();
    for (lower, upper) in rightward_pairs(&tr) {
        facts.insert(VisibilityFact { from: sq[upper].id, to: sq[lower].id, axis: Axis::Vertical });
    }
    facts
}

/// Undirected visibility edges as `(min id, max id)` pairs.
pub fn edge_set(layout: &Layout) -> Result<BTreeSet<(usize, usize)>, GeometryError> {
    Ok(facts_to_edges(&visibility_relation(layout)?))
}

pub(crate) fn facts_to_edges(facts: &BTreeSet<VisibilityFact>) -> BTreeSet<(usize, usize)> {
    facts.iter().map(|f| (f.from.min(f.to), f.from.max(f.to))).collect()
}

/// The visibility graph. Vertex `k` of the result is the square with the
/// `k`-th smallest id, so ids `0..n` map to themselves.
pub fn extract_graph(layout: &Layout) -> Result<Graph, GeometryError> {
    let edges = edge_set(layout)?;
    let mut ids = layout.ids();
    ids.sort_unstable();
    let index = |id: usize| ids.binary_search(&id).expect("id present");
    let mut g = Graph::new(ids.len());
    for (a, b) in edges {
        g.add_edge(index(a), index(b)).expect("visibility edges are simple");
    }
    Ok(g)
}
