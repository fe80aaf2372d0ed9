//! Oracles shared by the integration tests. None of them calls the search
//! or the sweep.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use usvkit::geometry::visibility_oracle;
use usvkit::reduce::{solve_clauses, Cnf};
use usvkit::{Axis, Graph, Layout};

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    let (a, b) = (i.min(j), i.max(j));
    a * n - a * (a + 1) / 2 + (b - a - 1)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Least edge bitmask over all relabellings; equal iff isomorphic.
pub fn canonical(g: &Graph) -> u64 {
    let n = g.n();
    assert!(n <= 8, "canonical form is for small graphs");
    let edges = g.edges();
    permutations(n)
        .iter()
        .map(|p| edges.iter().fold(0u64, |acc, &(u, v)| acc | 1 << pair_index(n, p[u], p[v])))
        .min()
        .unwrap_or(0)
}

/// One graph per isomorphism class on `n` vertices.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let edges: Vec<(usize, usize)> = pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e).collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        if seen.insert(canonical(&g)) {
            out.push(g);
        }
    }
    out
}

/// Edges by pairwise discretised checks in both directions and on both axes.
pub fn oracle_edges(l: &Layout) -> BTreeSet<(usize, usize)> {
    let ids = l.ids();
    let mut out = BTreeSet::new();
    for (x, &a) in ids.iter().enumerate() {
        for &b in &ids[x + 1..] {
            let seen = [(a, b), (b, a)].iter().any(|&(p, q)| {
                [Axis::Horizontal, Axis::Vertical].iter().any(|&ax| visibility_oracle(l, p, q, ax).unwrap())
            });
            if seen {
                out.insert((a.min(b), a.max(b)));
            }
        }
    }
    out
}

fn subsets(k: usize, from: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for i in start..from {
        if from - i < k - cur.len() {
            break;
        }
        cur.push(i);
        subsets(k, from, i + 1, cur, f);
        cur.pop();
    }
}

/// Canonical forms of every graph realised by `n` squares on distinct cells
/// of the `n × n` even lattice. Grid visibilities depend only on the order
/// of rows and columns, and `n` squares use at most `n` of each, so this
/// covers every grid visibility graph on `n` vertices.
pub fn grid_graphs_by_enumeration(n: usize) -> BTreeSet<u64> {
    let cells: Vec<(i64, i64)> =
        (0..n as i64).flat_map(|x| (0..n as i64).map(move |y| (2 * x, 2 * y))).collect();
    let mut out = BTreeSet::new();
    subsets(n, cells.len(), 0, &mut Vec::new(), &mut |pick| {
        let pts: Vec<(i64, i64)> = pick.iter().map(|&i| cells[i]).collect();
        let l = Layout::grid(&pts);
        let g = Graph::from_edges(n, &oracle_edges(&l).into_iter().collect::<Vec<_>>()).unwrap();
        out.insert(canonical(&g));
    });
    out
}

/// Brute-force NAE satisfiability.
pub fn nae_satisfiable(vars: usize, clauses: &[[i64; 3]]) -> bool {
    (0u32..1 << vars).any(|bits| {
        clauses.iter().all(|c| {
            let vals: Vec<bool> = c.iter().map(|&l| (bits >> (l.unsigned_abs() - 1) & 1 == 1) == (l > 0)).collect();
            vals.iter().any(|&v| v) && vals.iter().any(|&v| !v)
        })
    })
}

/// A random formula on at most `max_vars` variables with at most
/// `max_clauses` clauses of three distinct variables that is NAE-satisfiable.
pub fn random_nae_satisfiable(rng: &mut impl Rng, max_vars: usize, max_clauses: usize) -> Cnf {
    loop {
        let vars = rng.random_range(3..=max_vars);
        let m = rng.random_range(1..=max_clauses);
        let clauses: Vec<[i64; 3]> = (0..m)
            .map(|_| {
                let mut vs: Vec<i64> = Vec::new();
                while vs.len() < 3 {
                    let v = rng.random_range(1..=vars as i64);
                    if !vs.contains(&v) {
                        vs.push(v);
                    }
                }
                let mut c = [0i64; 3];
                for (k, v) in vs.into_iter().enumerate() {
                    c[k] = if rng.random_bool(0.5) { v } else { -v };
                }
                c
            })
            .collect();
        if nae_satisfiable(vars, &clauses) {
            assert!(solve_clauses(vars, &clauses).is_some());
            return Cnf { vars, clauses };
        }
    }
}
