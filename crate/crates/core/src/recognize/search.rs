//! Backtracking placement of unit squares on a lattice.
//!
//! Coordinates are integers in units of `1/unit`; squares have side `unit`.
//! The first vertex sits at the origin and every other vertex is placed
//! relative to it, so the search ranges over layouts up to translation whose
//! extent along each axis is at most `span`.

use std::collections::VecDeque;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::restriction::Restriction;
use crate::geometry::{Axis, Kind, Layout, Rat, VisibilityFact};
use crate::graphs::Graph;

#[derive(Clone, Debug, Default)]
pub struct SearchBudget {
    pub max_nodes: Option<u64>,
    pub time_limit: Option<Duration>,
    /// Single-threaded search with a fixed expansion order.
    pub deterministic: bool,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        SearchBudget { max_nodes: None, time_limit: None, deterministic: true }
    }

    pub fn nodes(n: u64) -> Self {
        SearchBudget { max_nodes: Some(n), time_limit: None, deterministic: true }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Symmetry {
    None,
    /// Mirror images only (the box is not square).
    Reflections,
    /// All eight symmetries of the square.
    Full,
}

#[derive(Clone, Debug)]
pub(crate) struct Domain {
    pub unit: i64,
    pub stride: i64,
    pub span_x: i64,
    pub span_y: i64,
    /// Grid semantics: visibilities only between squares sharing a row or
    /// column, and a blocker must fit a free cell of that row or column.
    pub grid: bool,
    pub kind: Kind,
}

pub(crate) struct Problem<'a> {
    pub g: &'a Graph,
    pub domain: Domain,
    pub restriction: Option<&'a Restriction>,
    pub symmetry: Symmetry,
    order: Vec<usize>,
    rank: Vec<usize>,
}

/// BFS order from a maximum-degree vertex, ties by id; every component is
/// started the same way.
pub(crate) fn placement_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let start = (0..n)
            .filter(|&v| !seen[v])
            .max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)))
            .expect("unseen vertex");
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

impl<'a> Problem<'a> {
    pub fn new(g: &'a Graph, domain: Domain, restriction: Option<&'a Restriction>, symmetry: Symmetry) -> Self {
        let order = placement_order(g);
        let mut rank = vec![0; g.n()];
        for (i, &v) in order.iter().enumerate() {
            rank[v] = i;
        }
        Problem { g, domain, restriction, symmetry, order, rank }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Stop {
    Budget,
}

/// Shared counters of one search run.
pub(crate) struct Control {
    pub nodes: AtomicU64,
    pub found: AtomicBool,
    pub out_of_budget: AtomicBool,
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
}

impl Control {
    pub fn new(budget: &SearchBudget) -> Self {
        Control {
            nodes: AtomicU64::new(0),
            found: AtomicBool::new(false),
            out_of_budget: AtomicBool::new(false),
            max_nodes: budget.max_nodes,
            deadline: budget.time_limit.map(|t| Instant::now() + t),
        }
    }

    fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if let Some(m) = self.max_nodes {
            if n > m {
                self.out_of_budget.store(true, Ordering::Relaxed);
                return false;
            }
        }
        if n % 1024 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    self.out_of_budget.store(true, Ordering::Relaxed);
                    return false;
                }
            }
        }
        !self.out_of_budget.load(Ordering::Relaxed)
    }
}

#[derive(Clone)]
struct State {
    pos: Vec<(i64, i64)>,
    placed: Vec<bool>,
    depth: usize,
}

/// A complete placement in lattice units, indexed by vertex.
pub(crate) type Placement = Vec<(i64, i64)>;

/// Facts between placed squares, in lattice units, indexed by vertex.
pub(crate) fn unit_facts(pos: &[(i64, i64)], placed: &[bool], unit: i64) -> Vec<VisibilityFact> {
    let idx: Vec<usize> = (0..pos.len()).filter(|&v| placed[v]).collect();
    let mut out = Vec::new();
    for &a in &idx {
        for &b in &idx {
            if a == b {
                continue;
            }
            if sees_right(pos, &idx, a, b, unit, false) {
                out.push(VisibilityFact { from: a, to: b, axis: Axis::Horizontal });
            }
            // Transposed: `b` left of `a` means `a` is the upper square.
            if sees_right(pos, &idx, b, a, unit, true) {
                out.push(VisibilityFact { from: a, to: b, axis: Axis::Vertical });
            }
        }
    }
    out
}

fn sees_right(pos: &[(i64, i64)], idx: &[usize], i: usize, j: usize, unit: i64, transpose: bool) -> bool {
    let get = |v: usize| if transpose { (pos[v].1, pos[v].0) } else { pos[v] };
    let (xi, yi) = get(i);
    let (xj, yj) = get(j);
    if xi >= xj {
        return false;
    }
    let lo = yi.max(yj);
    let hi = yi.min(yj) + unit;
    if hi <= lo {
        return false;
    }
    let mut blocks: Vec<(i64, i64)> = idx
        .iter()
        .filter(|&&k| k != i && k != j)
        .map(|&k| get(k))
        .filter(|&(xk, yk)| xk >= xi && xk <= xj && yk + unit > lo && yk < hi)
        .map(|(_, yk)| (yk, yk + unit))
        .collect();
    blocks.sort_unstable();
    let mut cur = lo;
    for (a, b) in blocks {
        if a > cur {
            return true;
        }
        cur = cur.max(b);
        if cur >= hi {
            return false;
        }
    }
    cur < hi
}

impl Problem<'_> {
    fn n(&self) -> usize {
        self.g.n()
    }

    fn bounds(&self, st: &State) -> (i64, i64, i64, i64) {
        let mut b = (i64::MAX, i64::MAX, i64::MIN, i64::MIN);
        for v in 0..self.n() {
            if st.placed[v] {
                let (x, y) = st.pos[v];
                b = (b.0.min(x), b.1.min(y), b.2.max(x), b.3.max(y));
            }
        }
        b
    }

    fn on_lattice(&self, c: i64) -> bool {
        c.rem_euclid(self.domain.stride) == 0
    }

    fn disjoint_from_placed(&self, st: &State, p: (i64, i64)) -> bool {
        let u = self.domain.unit;
        (0..self.n()).all(|w| !st.placed[w] || (p.0 - st.pos[w].0).abs() > u || (p.1 - st.pos[w].1).abs() > u)
    }

    fn candidates(&self, st: &State, v: usize) -> Vec<(i64, i64)> {
        let d = &self.domain;
        let u = d.unit;
        let (x0, y0, x1, y1) = self.bounds(st);
        // Window keeping the extent within the span.
        let (wx0, wx1) = (x1 - d.span_x, x0 + d.span_x);
        let (wy0, wy1) = (y1 - d.span_y, y0 + d.span_y);
        let first = |c: i64| c + (d.stride - c.rem_euclid(d.stride)) % d.stride;
        let placed_nbrs: Vec<usize> =
            self.g.neighbors(v).iter().copied().filter(|&w| st.placed[w]).collect();
        let mut out = Vec::new();
        if let Some(&anchor) = placed_nbrs.iter().min_by_key(|&&w| self.rank[w]) {
            let (ax, ay) = st.pos[anchor];
            // Horizontal band of the anchor, then its vertical band.
            let mut y = first((ay - u + 1).max(wy0));
            while y <= (ay + u - 1).min(wy1) {
                let mut x = first(wx0);
                while x <= wx1 {
                    if (x - ax).abs() > u {
                        out.push((x, y));
                    }
                    x += d.stride;
                }
                y += d.stride;
            }
            let mut x = first((ax - u + 1).max(wx0));
            while x <= (ax + u - 1).min(wx1) {
                let mut y = first(wy0);
                while y <= wy1 {
                    if (y - ay).abs() > u {
                        out.push((x, y));
                    }
                    y += d.stride;
                }
                x += d.stride;
            }
            out.retain(|&p| {
                placed_nbrs.iter().all(|&w| {
                    let (wx, wy) = st.pos[w];
                    (p.0 - wx).abs() < u || (p.1 - wy).abs() < u
                })
            });
            out.sort_by_key(|&(x, y)| ((x - ax).abs() + (y - ay).abs(), x, y));
        } else {
            let mut y = first(wy0);
            while y <= wy1 {
                let mut x = first(wx0);
                while x <= wx1 {
                    out.push((x, y));
                    x += d.stride;
                }
                y += d.stride;
            }
            out.sort_by_key(|&(x, y)| (x.abs() + y.abs(), x, y));
        }
        out.retain(|&p| self.disjoint_from_placed(st, p));
        if st.depth == 1 {
            let (fx, fy) = st.pos[self.order[0]];
            out.retain(|&(x, y)| {
                let (dx, dy) = (x - fx, y - fy);
                match self.symmetry {
                    Symmetry::None => true,
                    Symmetry::Reflections => dx >= 0 && dy >= 0,
                    Symmetry::Full => dx >= 0 && dy >= 0 && dy <= dx,
                }
            });
        }
        out
    }

    /// Whether a square that is still to be placed could block the
    /// visibility `f` between two placed squares: some lattice coordinate
    /// strictly inside the channel, and for grids a free cell there.
    fn blockable(&self, st: &State, f: &VisibilityFact) -> bool {
        let u = self.domain.unit;
        let (a, b) = (st.pos[f.from], st.pos[f.to]);
        let (lo, hi) = match f.axis {
            Axis::Horizontal => (a.0, b.0),
            Axis::Vertical => (b.1, a.1),
        };
        (lo + u + 1..hi - u).any(|c| {
            if !self.on_lattice(c) {
                return false;
            }
            if !self.domain.grid {
                return true;
            }
            let cell = match f.axis {
                Axis::Horizontal => (c, a.1),
                Axis::Vertical => (a.0, c),
            };
            self.disjoint_from_placed(st, cell)
        })
    }

    /// Prune test after a placement.
    fn consistent(&self, st: &State) -> bool {
        let facts = unit_facts(&st.pos, &st.placed, self.domain.unit);
        let has = |f: VisibilityFact| facts.contains(&f);
        let n = self.n();
        let remaining = n - st.depth;
        let mut visible = vec![false; n * n];
        for f in &facts {
            visible[f.from * n + f.to] = true;
            visible[f.to * n + f.from] = true;
        }
        for a in 0..n {
            if !st.placed[a] {
                continue;
            }
            for &b in self.g.neighbors(a) {
                if b < a || !st.placed[b] {
                    continue;
                }
                if !visible[a * n + b] {
                    return false;
                }
                if let Some(r) = self.restriction {
                    if !r.pair_ok(a, b, has) {
                        return false;
                    }
                }
            }
        }
        for f in &facts {
            if !self.g.has_edge(f.from, f.to) && (remaining == 0 || !self.blockable(st, f)) {
                return false;
            }
        }
        true
    }

    fn root_state(&self) -> State {
        let n = self.n();
        let mut st = State { pos: vec![(0, 0); n], placed: vec![false; n], depth: 0 };
        if n > 0 {
            st.placed[self.order[0]] = true;
            st.depth = 1;
        }
        st
    }

    /// Depth-first search. `emit` receives each complete placement and returns
    /// whether the search should continue.
    fn dfs(&self, st: &mut State, ctl: &Control, emit: &mut dyn FnMut(&Placement) -> bool) -> Result<bool, Stop> {
        if ctl.found.load(Ordering::Relaxed) {
            return Ok(false);
        }
        if st.depth == self.n() {
            return Ok(emit(&st.pos));
        }
        let v = self.order[st.depth];
        for p in self.candidates(st, v) {
            if !ctl.tick() {
                return Err(Stop::Budget);
            }
            st.pos[v] = p;
            st.placed[v] = true;
            st.depth += 1;
            let ok = self.consistent(st);
            let r = if ok { self.dfs(st, ctl, emit) } else { Ok(true) };
            st.depth -= 1;
            st.placed[v] = false;
            match r {
                Ok(true) => {}
                other => return other,
            }
        }
        Ok(true)
    }

    /// Search for one placement. Parallel over the second vertex unless the
    /// budget asks for a deterministic run.
    pub fn find_one(&self, budget: &SearchBudget, ctl: &Control) -> Result<Option<Placement>, Stop> {
        let root = self.root_state();
        if self.n() == 0 {
            return Ok(Some(Vec::new()));
        }
        if !self.consistent(&root) {
            return Ok(None);
        }
        if budget.deterministic || self.n() < 2 || rayon::current_num_threads() < 2 {
            let mut found = None;
            let mut emit = |p: &Placement| {
                found = Some(p.clone());
                false
            };
            let mut st = root;
            self.dfs(&mut st, ctl, &mut emit)?;
            return Ok(found);
        }
        let v = self.order[1];
        let cands = self.candidates(&root, v);
        let found: Mutex<Option<Placement>> = Mutex::new(None);
        let stops: Vec<Result<bool, Stop>> = cands
            .par_iter()
            .map(|&p| {
                if ctl.found.load(Ordering::Relaxed) {
                    return Ok(false);
                }
                if !ctl.tick() {
                    return Err(Stop::Budget);
                }
                let mut st = root.clone();
                st.pos[v] = p;
                st.placed[v] = true;
                st.depth += 1;
                if !self.consistent(&st) {
                    return Ok(true);
                }
                let mut emit = |pl: &Placement| {
                    let mut slot = found.lock().expect("result lock");
                    if slot.is_none() {
                        *slot = Some(pl.clone());
                    }
                    ctl.found.store(true, Ordering::Relaxed);
                    false
                };
                self.dfs(&mut st, ctl, &mut emit)
            })
            .collect();
        let result = found.into_inner().expect("result lock");
        if result.is_some() {
            return Ok(result);
        }
        if stops.iter().any(|s| matches!(s, Err(Stop::Budget))) {
            return Err(Stop::Budget);
        }
        Ok(None)
    }

    /// Visit every complete placement in deterministic order.
    pub fn for_each(&self, ctl: &Control, emit: &mut dyn FnMut(&Placement) -> bool) -> Result<(), Stop> {
        let mut st = self.root_state();
        if self.n() == 0 {
            emit(&Vec::new());
            return Ok(());
        }
        if !self.consistent(&st) {
            return Ok(());
        }
        self.dfs(&mut st, ctl, emit).map(|_| ())
    }

    /// Convert a placement to a layout translated to the non-negative
    /// quadrant, square `v` carrying id `v`.
    pub fn to_layout(&self, p: &Placement) -> Layout {
        let unit = self.domain.unit;
        let (mx, my) = p.iter().fold((i64::MAX, i64::MAX), |(a, b), &(x, y)| (a.min(x), b.min(y)));
        let pts: Vec<(Rat, Rat)> = p.iter().map(|&(x, y)| (Rat::new(x - mx, unit), Rat::new(y - my, unit))).collect();
        Layout::free(&pts).with_kind(self.domain.kind)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_starts_at_max_degree() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        assert_eq!(placement_order(&g), vec![1, 0, 2, 3, 4]);
    }

    #[test]
    fn unit_facts_match_rational_geometry() {
        let pos = vec![(0, 0), (12, 0), (6, 2), (6, -9)];
        let facts = unit_facts(&pos, &[true; 4], 4);
        let layout = Layout::free(&pos.iter().map(|&(x, y)| (Rat::new(x, 4), Rat::new(y, 4))).collect::<Vec<_>>());
        let exact: Vec<VisibilityFact> = crate::geometry::visibility_relation(&layout).unwrap().into_iter().collect();
        let mut facts = facts;
        facts.sort();
        assert_eq!(facts, exact);
    }
}
