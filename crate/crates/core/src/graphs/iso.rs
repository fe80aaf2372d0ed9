//! Isomorphism of small edge-labelled digraphs by colour refinement followed
//! by backtracking. Undirected graphs and the visibility structures of
//! layouts are both encoded as labelled adjacency matrices.

use std::collections::{BTreeMap, BTreeSet};

use super::Graph;
use crate::geometry::{visibility_relation, Axis, GeometryError, Layout};

/// Labelled adjacency matrix: `m[u * n + v]` holds the relation bits of `(u, v)`.
#[derive(Clone, Debug)]
struct Rel {
    n: usize,
    m: Vec<u8>,
}

impl Rel {
    fn at(&self, u: usize, v: usize) -> u8 {
        self.m[u * self.n + v]
    }
}

fn refine(rels: [&Rel; 2]) -> Option<[Vec<usize>; 2]> {
    let n = rels[0].n;
    let mut colors: [Vec<usize>; 2] = [vec![0; n], vec![0; n]];
    let mut classes = 1;
    loop {
        let mut table: BTreeMap<(usize, Vec<(u8, u8, usize)>), usize> = BTreeMap::new();
        let mut keys: [Vec<(usize, Vec<(u8, u8, usize)>)>; 2] = [Vec::new(), Vec::new()];
        for side in 0..2 {
            let r = rels[side];
            for u in 0..n {
                let mut sig: Vec<(u8, u8, usize)> = (0..n)
                    .filter(|&v| v != u && (r.at(u, v) | r.at(v, u)) != 0)
                    .map(|v| (r.at(u, v), r.at(v, u), colors[side][v]))
                    .collect();
                sig.sort_unstable();
                keys[side].push((colors[side][u], sig));
            }
        }
        for side in 0..2 {
            for k in &keys[side] {
                let next = table.len();
                table.entry(k.clone()).or_insert(next);
            }
        }
        let next: [Vec<usize>; 2] = [
            keys[0].iter().map(|k| table[k]).collect(),
            keys[1].iter().map(|k| table[k]).collect(),
        ];
        let mut h0 = next[0].clone();
        let mut h1 = next[1].clone();
        h0.sort_unstable();
        h1.sort_unstable();
        if h0 != h1 {
            return None;
        }
        let count = table.len();
        colors = next;
        if count == classes {
            return Some(colors);
        }
        classes = count;
    }
}

fn rel_isomorphic(a: &Rel, b: &Rel) -> bool {
    if a.n != b.n {
        return false;
    }
    let n = a.n;
    if n == 0 {
        return true;
    }
    let Some([ca, cb]) = refine([a, b]) else {
        return false;
    };
    // Map vertices in an order where each one is as connected as possible to
    // those already mapped, starting from the rarest colour.
    let mut class_size: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in &ca {
        *class_size.entry(c).or_default() += 1;
    }
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    for _ in 0..n {
        let next = (0..n)
            .filter(|&u| !placed[u])
            .min_by_key(|&u| (usize::MAX - links[u], class_size[&ca[u]], u))
            .expect("unplaced vertex");
        placed[next] = true;
        order.push(next);
        for v in 0..n {
            if (a.at(next, v) | a.at(v, next)) != 0 {
                links[v] += 1;
            }
        }
    }
    let mut by_color: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in cb.iter().enumerate() {
        by_color.entry(c).or_default().push(v);
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(a, b, &ca, &by_color, &order, 0, &mut map, &mut used)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &Rel,
    b: &Rel,
    ca: &[usize],
    by_color: &BTreeMap<usize, Vec<usize>>,
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let u = order[depth];
    let Some(cands) = by_color.get(&ca[u]) else {
        return false;
    };
    for &v in cands {
        if used[v] {
            continue;
        }
        let ok = order[..depth].iter().all(|&w| {
            let x = map[w];
            a.at(u, w) == b.at(v, x) && a.at(w, u) == b.at(x, v)
        });
        if !ok {
            continue;
        }
        map[u] = v;
        used[v] = true;
        if extend(a, b, ca, by_color, order, depth + 1, map, used) {
            return true;
        }
        used[v] = false;
        map[u] = usize::MAX;
    }
    false
}

fn graph_rel(g: &Graph) -> Rel {
    let n = g.n();
    let mut m = vec![0u8; n * n];
    for (u, v) in g.edges() {
        m[u * n + v] = 1;
        m[v * n + u] = 1;
    }
    Rel { n, m }
}

pub fn graph_isomorphic(g1: &Graph, g2: &Graph) -> bool {
    if g1.n() != g2.n() || g1.edge_count() != g2.edge_count() {
        return false;
    }
    let mut d1: Vec<usize> = (0..g1.n()).map(|v| g1.degree(v)).collect();
    let mut d2: Vec<usize> = (0..g2.n()).map(|v| g2.degree(v)).collect();
    d1.sort_unstable();
    d2.sort_unstable();
    d1 == d2 && rel_isomorphic(&graph_rel(g1), &graph_rel(g2))
}

/// The squares of a layout (as indices `0..n` in id order) with the
/// horizontal and vertical visibility relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VStructure {
    pub n: usize,
    pub horizontal: BTreeSet<(usize, usize)>,
    pub vertical: BTreeSet<(usize, usize)>,
}

impl VStructure {
    pub fn of(layout: &Layout) -> Result<VStructure, GeometryError> {
        let facts = visibility_relation(layout)?;
        let mut ids = layout.ids();
        ids.sort_unstable();
        let idx = |id: usize| ids.binary_search(&id).expect("id present");
        let mut s = VStructure { n: ids.len(), horizontal: BTreeSet::new(), vertical: BTreeSet::new() };
        for f in facts {
            let p = (idx(f.from), idx(f.to));
            match f.axis {
                Axis::Horizontal => s.horizontal.insert(p),
                Axis::Vertical => s.vertical.insert(p),
            };
        }
        Ok(s)
    }

    fn rel(&self, swap: bool, inv_h: bool, inv_v: bool) -> Rel {
        let n = self.n;
        let mut m = vec![0u8; n * n];
        let (first, second) = if swap { (&self.vertical, &self.horizontal) } else { (&self.horizontal, &self.vertical) };
        for &(u, v) in first {
            let (p, q) = if inv_h { (v, u) } else { (u, v) };
            m[p * n + q] |= 1;
        }
        for &(u, v) in second {
            let (p, q) = if inv_v { (v, u) } else { (u, v) };
            m[p * n + q] |= 2;
        }
        Rel { n, m }
    }
}

/// Isomorphism of visibility structures up to inverting either relation and
/// swapping the axes: eight candidate signatures.
pub fn v_isomorphic_structures(s1: &VStructure, s2: &VStructure) -> bool {
    if s1.n != s2.n {
        return false;
    }
    let base = s1.rel(false, false, false);
    for swap in [false, true] {
        let (h2, v2) = if swap { (s2.vertical.len(), s2.horizontal.len()) } else { (s2.horizontal.len(), s2.vertical.len()) };
        if h2 != s1.horizontal.len() || v2 != s1.vertical.len() {
            continue;
        }
        for inv_h in [false, true] {
            for inv_v in [false, true] {
                if rel_isomorphic(&base, &s2.rel(swap, inv_h, inv_v)) {
                    return true;
                }
            }
        }
    }
    false
}

pub fn v_isomorphic(l1: &Layout, l2: &Layout) -> Result<bool, GeometryError> {
    Ok(v_isomorphic_structures(&VStructure::of(l1)?, &VStructure::of(l2)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{int, rat};
    use crate::graphs::{generate_family, Family};

    #[test]
    fn permuted_cycle_is_isomorphic() {
        let c4 = generate_family(&Family::Cycle(4)).unwrap();
        let p = Graph::from_edges(4, &[(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        assert!(graph_isomorphic(&c4, &p));
        let p4 = generate_family(&Family::Path(4)).unwrap();
        assert!(!graph_isomorphic(&c4, &p4));
    }

    #[test]
    fn regular_graphs_are_separated() {
        // Two 3-regular graphs on 6 vertices: K_{3,3} and the prism.
        let k33 = generate_family(&Family::Biclique(3, 3)).unwrap();
        let prism = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]).unwrap();
        assert!(!graph_isomorphic(&k33, &prism));
        assert!(graph_isomorphic(&prism, &prism.clone()));
    }

    #[test]
    fn mirror_and_rotation_are_v_isomorphic() {
        let l = Layout::free(&[(int(0), int(0)), (rat(5, 4), rat(1, 2)), (rat(7, 4), rat(-3, 4)), (rat(1, 2), rat(-5, 4))]);
        assert!(v_isomorphic(&l, &l.mirror_x()).unwrap());
        assert!(v_isomorphic(&l, &l.rotate90()).unwrap());
        assert!(v_isomorphic(&l, &l.transpose()).unwrap());
    }

    #[test]
    fn row_and_column_pairs_are_v_isomorphic() {
        let row = Layout::grid(&[(0, 0), (2, 0)]);
        let col = Layout::grid(&[(0, 0), (0, 2)]);
        assert!(v_isomorphic(&row, &col).unwrap());
        let bent = Layout::grid(&[(0, 0), (2, 0), (2, 2)]);
        let straight = Layout::grid(&[(0, 0), (2, 0), (4, 0)]);
        assert!(!v_isomorphic(&bent, &straight).unwrap());
    }
}
