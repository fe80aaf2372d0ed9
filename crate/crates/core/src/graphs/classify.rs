use std::fmt;

use super::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Class {
    /// Unit square grid visibility graphs (integer positions).
    Usgv,
    /// Unit square visibility graphs (rational positions).
    Usv,
}

impl Class {
    pub fn name(self) -> &'static str {
        match self {
            Class::Usgv => "usgv",
            Class::Usv => "usv",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Condition {
    Pass,
    Fail(String),
}

impl Condition {
    pub fn passed(&self) -> bool {
        matches!(self, Condition::Pass)
    }
}

/// Membership test for graphs of the grid class (every condition is
/// necessary) or the free class (a vertex of degree at least 7 lies on a
/// cycle).
pub fn necessary_conditions(g: &Graph, cls: Class) -> Condition {
    match cls {
        Class::Usgv => {
            for v in 0..g.n() {
                if g.degree(v) > 4 {
                    return Condition::Fail(format!("vertex {v} has degree {} > 4", g.degree(v)));
                }
            }
            for (u, v) in g.edges() {
                if let Some(w) = g.neighbors(u).intersection(g.neighbors(v)).next() {
                    return Condition::Fail(format!("adjacent vertices {u} and {v} share neighbour {w}"));
                }
            }
            for u in 0..g.n() {
                for v in u + 1..g.n() {
                    let common = g.neighbors(u).intersection(g.neighbors(v)).count();
                    if common > 2 {
                        return Condition::Fail(format!("vertices {u} and {v} have {common} common neighbours"));
                    }
                }
            }
            Condition::Pass
        }
        Class::Usv => {
            for v in 0..g.n() {
                if g.degree(v) >= 7 && !g.on_cycle(v) {
                    return Condition::Fail(format!("vertex {v} has degree {} and lies on no cycle", g.degree(v)));
                }
            }
            Condition::Pass
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Verdict,
    pub rule: &'static str,
    pub detail: String,
}

fn is_cycle(g: &Graph) -> bool {
    g.n() >= 3 && g.is_connected() && (0..g.n()).all(|v| g.degree(v) == 2)
}

fn is_clique(g: &Graph) -> bool {
    g.n() >= 1 && g.edge_count() == g.n() * (g.n() - 1) / 2
}

/// Side sizes `(i, j)` with `i ≤ j` if `g` is a complete bipartite graph.
fn biclique_sides(g: &Graph) -> Option<(usize, usize)> {
    if g.n() < 2 || !g.is_connected() {
        return None;
    }
    let mut side = vec![usize::MAX; g.n()];
    side[0] = 0;
    let mut stack = vec![0];
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if side[w] == usize::MAX {
                side[w] = 1 - side[u];
                stack.push(w);
            } else if side[w] == side[u] {
                return None;
            }
        }
    }
    let a = side.iter().filter(|&&s| s == 0).count();
    let b = g.n() - a;
    (g.edge_count() == a * b).then_some((a.min(b), a.max(b)))
}

fn decided(verdict: Verdict, rule: &'static str, detail: String) -> Classification {
    Classification { verdict, rule, detail }
}

pub fn classify(g: &Graph, cls: Class) -> Classification {
    let n = g.n();
    if g.edge_count() == 0 {
        return decided(Verdict::Yes, "edgeless", format!("{n} isolated vertices"));
    }
    if is_cycle(g) {
        let ok = cls == Class::Usv || n >= 4;
        return decided(if ok { Verdict::Yes } else { Verdict::No }, "cycle", format!("C_{n}"));
    }
    if is_clique(g) {
        let ok = match cls {
            Class::Usgv => n <= 2,
            Class::Usv => n <= 4,
        };
        return decided(if ok { Verdict::Yes } else { Verdict::No }, "clique", format!("K_{n}"));
    }
    if let Some((i, j)) = biclique_sides(g) {
        // The only published layout of K_{2,6} has squares meeting at
        // corners, which this model forbids.
        if cls == Class::Usv && (i, j) == (2, 6) {
            return decided(Verdict::Unknown, "biclique", "K_{2,6}: no layout with disjoint squares known".into());
        }
        let ok = match cls {
            Class::Usgv => (i == 1 && j <= 4) || (i == 2 && j == 2),
            Class::Usv => (i <= 2 && j <= 6) || (i == 3 && j <= 4),
        };
        return decided(if ok { Verdict::Yes } else { Verdict::No }, "biclique", format!("K_{{{i},{j}}}"));
    }
    if cls == Class::Usv && n <= 4 {
        return decided(Verdict::Yes, "at-most-four-vertices", format!("{n} vertices"));
    }
    if g.is_tree() {
        let d = g.max_degree();
        let verdict = match cls {
            Class::Usgv if d <= 4 => Verdict::Yes,
            Class::Usgv => Verdict::No,
            Class::Usv if d <= 5 => Verdict::Yes,
            Class::Usv if d >= 7 => Verdict::No,
            Class::Usv => Verdict::Unknown,
        };
        return decided(verdict, "tree", format!("maximum degree {d}"));
    }
    if let Condition::Fail(reason) = necessary_conditions(g, cls) {
        return decided(Verdict::No, "necessary-condition", reason);
    }
    decided(Verdict::Unknown, "none", "no closed-form rule applies".to_string())
}
