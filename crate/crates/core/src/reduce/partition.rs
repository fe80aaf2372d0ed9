//! Area-bounded grid layouts from 3-Partition: the frame graph with its
//! compartments, the ladders for the numbers, and the packed layout for a
//! solution.

use super::ReduceError;
use crate::geometry::Layout;
use crate::graphs::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreePartitionInstance {
    pub b: u64,
    pub a: Vec<u64>,
}

/// A solution: `m` triples of indices into `a`, triple `i` filling
/// compartment `i`.
pub type Partition = Vec<[usize; 3]>;

impl ThreePartitionInstance {
    /// Checks `|A| = 3m > 0`, `B/4 < a_i < B/2` and `Σ a_i = mB`.
    pub fn new(b: u64, a: Vec<u64>) -> Result<Self, ReduceError> {
        if a.is_empty() || a.len() % 3 != 0 {
            return Err(ReduceError::Instance(format!("|A| = {} is not a positive multiple of 3", a.len())));
        }
        if let Some(&x) = a.iter().find(|&&x| 4 * x <= b || 2 * x >= b) {
            return Err(ReduceError::Instance(format!("a = {x} is not strictly between B/4 and B/2")));
        }
        let m = (a.len() / 3) as u64;
        let sum: u64 = a.iter().sum();
        if sum != m * b {
            return Err(ReduceError::Instance(format!("sum {sum} differs from mB = {}", m * b)));
        }
        Ok(ThreePartitionInstance { b, a })
    }

    pub fn m(&self) -> usize {
        self.a.len() / 3
    }

    /// Scale `B` and every `a_i` by the least factor making all `a_i > 2`.
    pub fn normalized(&self) -> ThreePartitionInstance {
        let min = self.a.iter().copied().min().unwrap_or(3);
        let k = 3u64.div_ceil(min).max(1);
        ThreePartitionInstance { b: self.b * k, a: self.a.iter().map(|x| x * k).collect() }
    }

    fn is_normalized(&self) -> bool {
        self.a.iter().all(|&x| x > 2)
    }

    pub fn check_partition(&self, p: &Partition) -> Result<(), ReduceError> {
        if p.len() != self.m() {
            return Err(ReduceError::Partition(format!("{} triples for m = {}", p.len(), self.m())));
        }
        let mut used = vec![false; self.a.len()];
        for t in p {
            for &i in t {
                if i >= used.len() || used[i] {
                    return Err(ReduceError::Partition(format!("index {i} missing or used twice")));
                }
                used[i] = true;
            }
            let s: u64 = t.iter().map(|&i| self.a[i]).sum();
            if s != self.b {
                return Err(ReduceError::Partition(format!("triple {t:?} sums to {s}, not {}", self.b)));
            }
        }
        Ok(())
    }
}

/// Exhaustive search: the first unused number is combined with every pair of
/// later unused numbers completing it to `B`.
pub fn solve_3partition(inst: &ThreePartitionInstance) -> Option<Partition> {
    fn go(inst: &ThreePartitionInstance, order: &[usize], used: &mut [bool], out: &mut Partition) -> bool {
        let Some(p) = (0..order.len()).find(|&p| !used[p]) else {
            return true;
        };
        used[p] = true;
        for q in p + 1..order.len() {
            if used[q] || (q > p + 1 && inst.a[order[q]] == inst.a[order[q - 1]] && !used[q - 1]) {
                continue;
            }
            let rest = inst.b as i64 - (inst.a[order[p]] + inst.a[order[q]]) as i64;
            if rest <= 0 {
                continue;
            }
            used[q] = true;
            for r in q + 1..order.len() {
                if used[r] || inst.a[order[r]] as i64 != rest {
                    continue;
                }
                used[r] = true;
                out.push([order[p], order[q], order[r]]);
                if go(inst, order, used, out) {
                    return true;
                }
                out.pop();
                used[r] = false;
                break;
            }
            used[q] = false;
        }
        used[p] = false;
        false
    }
    let mut order: Vec<usize> = (0..inst.a.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(inst.a[i]));
    let mut used = vec![false; order.len()];
    let mut out = Vec::new();
    go(inst, &order, &mut used, &mut out).then_some(out)
}

/// Vertex numbering of the construction. u-vertices come first
/// (`u_{i,j}` for `i ≤ m`, then `u_{m+1,0}`), then the v-vertices in the same
/// order, the w-vertices, and finally each ladder's b-vertices followed by
/// its c-vertices.
#[derive(Clone, Debug)]
pub struct FrameIndex {
    pub m: usize,
    pub b: usize,
    ladder_start: Vec<usize>,
    sizes: Vec<usize>,
}

impl FrameIndex {
    pub fn new(m: usize, b: usize, sizes: &[usize]) -> Self {
        let mut ladder_start = Vec::with_capacity(sizes.len());
        let mut next = 2 * (m * (b + 1) + 1) + 2 * (m + 1);
        for &s in sizes {
            ladder_start.push(next);
            next += 2 * s;
        }
        FrameIndex { m, b, ladder_start, sizes: sizes.to_vec() }
    }

    fn line(&self, i: usize, j: usize) -> usize {
        debug_assert!(i <= self.m || j == 0);
        (i - 1) * (self.b + 1) + j
    }

    pub fn u(&self, i: usize, j: usize) -> usize {
        self.line(i, j)
    }

    pub fn v(&self, i: usize, j: usize) -> usize {
        self.m * (self.b + 1) + 1 + self.line(i, j)
    }

    pub fn w(&self, i: usize, k: usize) -> usize {
        2 * (self.m * (self.b + 1) + 1) + 2 * (i - 1) + (k - 1)
    }

    pub fn frame_len(&self) -> usize {
        2 * (self.m * (self.b + 1) + 1) + 2 * (self.m + 1)
    }

    /// `b_{i,j}` for ladder `i` (1-based) and rung `j` (1-based).
    pub fn lb(&self, i: usize, j: usize) -> usize {
        self.ladder_start[i - 1] + j - 1
    }

    pub fn lc(&self, i: usize, j: usize) -> usize {
        self.ladder_start[i - 1] + self.sizes[i - 1] + j - 1
    }

    pub fn len(&self) -> usize {
        self.frame_len() + 2 * self.sizes.iter().sum::<usize>()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

fn build(idx: &FrameIndex) -> Graph {
    let (m, b) = (idx.m, idx.b);
    let mut g = Graph::new(idx.len());
    let add = |g: &mut Graph, x: usize, y: usize| g.add_edge(x, y).expect("indices in range");
    for i in 1..=m + 1 {
        let last = if i <= m { b } else { 0 };
        for j in 0..=last {
            g.set_label(idx.u(i, j), format!("u_{i},{j}"));
            g.set_label(idx.v(i, j), format!("v_{i},{j}"));
        }
        g.set_label(idx.w(i, 1), format!("w_{i},1"));
        g.set_label(idx.w(i, 2), format!("w_{i},2"));
    }
    for i in 1..=m {
        for j in 0..b {
            add(&mut g, idx.u(i, j), idx.u(i, j + 1));
            add(&mut g, idx.v(i, j), idx.v(i, j + 1));
        }
        add(&mut g, idx.u(i, b), idx.u(i + 1, 0));
        add(&mut g, idx.v(i, b), idx.v(i + 1, 0));
        for j in 1..=b {
            add(&mut g, idx.u(i, j), idx.v(i, j));
        }
    }
    for i in 1..=m + 1 {
        add(&mut g, idx.u(i, 0), idx.v(i, 0));
        add(&mut g, idx.v(i, 0), idx.w(i, 1));
        add(&mut g, idx.w(i, 1), idx.w(i, 2));
    }
    for (q, &s) in idx.sizes.iter().enumerate() {
        let i = q + 1;
        for j in 1..=s {
            g.set_label(idx.lb(i, j), format!("b_{i},{j}"));
            g.set_label(idx.lc(i, j), format!("c_{i},{j}"));
            add(&mut g, idx.lb(i, j), idx.lc(i, j));
            if j < s {
                add(&mut g, idx.lb(i, j), idx.lb(i, j + 1));
                add(&mut g, idx.lc(i, j), idx.lc(i, j + 1));
            }
        }
    }
    g
}

/// The frame graph alone, for `m` compartments of size `b`.
pub fn frame_graph(m: usize, b: usize) -> Result<Graph, ReduceError> {
    if m == 0 || b == 0 {
        return Err(ReduceError::Instance("m and B must be positive".into()));
    }
    Ok(build(&FrameIndex::new(m, b, &[])))
}

/// Frame graph plus one ladder per number.
pub fn reduce_3partition(inst: &ThreePartitionInstance) -> Result<Graph, ReduceError> {
    ThreePartitionInstance::new(inst.b, inst.a.clone())?;
    if !inst.is_normalized() {
        return Err(ReduceError::Instance("every a_i must exceed 2; scale the instance first".into()));
    }
    let sizes: Vec<usize> = inst.a.iter().map(|&x| x as usize).collect();
    Ok(build(&FrameIndex::new(inst.m(), inst.b as usize, &sizes)))
}

fn frame_points(idx: &FrameIndex) -> Vec<(i64, i64)> {
    let mut pts = vec![(0, 0); idx.len()];
    let (m, b) = (idx.m, idx.b as i64);
    let p = |i: usize| (i as i64 - 1) * 2 * (b + 1);
    for i in 1..=m + 1 {
        let last = if i <= m { b } else { 0 };
        for j in 0..=last {
            pts[idx.u(i, j as usize)] = (p(i) + 2 * j, 0);
            pts[idx.v(i, j as usize)] = (p(i) + 2 * j, 2);
        }
        pts[idx.w(i, 1)] = (p(i), 4);
        pts[idx.w(i, 2)] = (p(i), 6);
    }
    pts
}

/// The frame drawn as a horizontal ladder with the w-vertices stacked above
/// each `v_{i,0}`.
pub fn frame_layout(m: usize, b: usize) -> Result<Layout, ReduceError> {
    frame_graph(m, b)?;
    Ok(Layout::grid(&frame_points(&FrameIndex::new(m, b, &[]))))
}

/// Layout of height 7 and width `2(mB+m+1)−1` for a solution: the frame as in
/// [`frame_layout`] and the ladders of triple `i` packed side by side in
/// compartment `i`, b-vertices on row 4 and c-vertices on row 6, aligned
/// with the frame columns.
///
/// This box-exact layout is weak: rung squares on even columns also see the
/// v-squares below them, neighbouring ladders see each other, and the first
/// and last rungs see the w-squares. Its graph contains the reduction graph.
pub fn witness_layout_3partition(inst: &ThreePartitionInstance, p: &Partition) -> Result<Layout, ReduceError> {
    inst.check_partition(p)?;
    reduce_3partition(inst)?;
    let sizes: Vec<usize> = inst.a.iter().map(|&x| x as usize).collect();
    let idx = FrameIndex::new(inst.m(), inst.b as usize, &sizes);
    let mut pts = frame_points(&idx);
    for (c, triple) in p.iter().enumerate() {
        let base = c as i64 * 2 * (inst.b as i64 + 1);
        let mut col = 0i64;
        for &q in triple {
            for j in 1..=sizes[q] {
                col += 1;
                pts[idx.lb(q + 1, j)] = (base + 2 * col, 4);
                pts[idx.lc(q + 1, j)] = (base + 2 * col, 6);
            }
        }
    }
    Ok(Layout::grid(&pts))
}
