//! Free layouts from NAE-3SAT: the clause backbone, the variable gadgets
//! with their literal rows, and the layout for a satisfying assignment.

use super::nae::{Assignment, NaeFormula};
use super::ReduceError;
use crate::geometry::{Layout, Rat};
use crate::graphs::Graph;

/// Vertex numbering of the construction for a formula with `m` clauses
/// (`2m` after doubling) over `n` variables.
///
/// Order: `c_0..c_{2m}`, then `c_j^1, c_j^2` for each `j < 2m`, the literal
/// vertices `l_j^1..l_j^3` for `j = 1..2m`, `x_i, x_i^1, x_i^2` for
/// `i = 1..n+1`, the twelve arrow and gadget centres of each variable
/// (`t, t→, t←, f^1, f^1→, f^1←, f^2, f^2→, f^2←`), and the fifteen helpers
/// `h^0..h^4` of `t`, `f^1`, `f^2` per variable.
#[derive(Clone, Copy, Debug)]
pub struct NaeIndex {
    pub m: usize,
    pub n: usize,
}

/// The three gadgets of a variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gadget {
    T,
    F1,
    F2,
}

impl Gadget {
    const ALL: [Gadget; 3] = [Gadget::T, Gadget::F1, Gadget::F2];

    fn k(self) -> usize {
        self as usize
    }

    fn name(self) -> &'static str {
        match self {
            Gadget::T => "t",
            Gadget::F1 => "f^1",
            Gadget::F2 => "f^2",
        }
    }
}

impl NaeIndex {
    pub fn c(&self, j: usize) -> usize {
        j
    }

    pub fn ch(&self, j: usize, h: usize) -> usize {
        2 * self.m + 1 + 2 * j + (h - 1)
    }

    pub fn l(&self, j: usize, r: usize) -> usize {
        6 * self.m + 1 + 3 * (j - 1) + (r - 1)
    }

    fn x_base(&self) -> usize {
        12 * self.m + 1
    }

    pub fn x(&self, i: usize) -> usize {
        self.x_base() + 3 * (i - 1)
    }

    pub fn xh(&self, i: usize, h: usize) -> usize {
        self.x(i) + h
    }

    fn g_base(&self) -> usize {
        self.x_base() + 3 * (self.n + 1)
    }

    pub fn centre(&self, i: usize, g: Gadget) -> usize {
        self.g_base() + 9 * (i - 1) + 3 * g.k()
    }

    /// Right-pointing arrow, placed on the left.
    pub fn right(&self, i: usize, g: Gadget) -> usize {
        self.centre(i, g) + 1
    }

    pub fn left(&self, i: usize, g: Gadget) -> usize {
        self.centre(i, g) + 2
    }

    pub fn h(&self, i: usize, g: Gadget, r: usize) -> usize {
        self.g_base() + 9 * self.n + 15 * (i - 1) + 5 * g.k() + r
    }

    pub fn len(&self) -> usize {
        12 * self.m + 27 * self.n + 4
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// The gadget carrying the `r`-th literal of doubled clause `j` (1-based).
fn literal_gadget(f: &NaeFormula, j: usize, r: usize) -> (usize, Gadget) {
    let m = f.m();
    let lit = f.clauses[(j - 1) % m][r - 1];
    let i = lit.unsigned_abs() as usize;
    if lit > 0 {
        (i, Gadget::T)
    } else if j <= m {
        (i, Gadget::F1)
    } else {
        (i, Gadget::F2)
    }
}

/// The graph of the construction.
pub fn reduce_nae(f: &NaeFormula) -> Result<Graph, ReduceError> {
    f.check()?;
    let idx = NaeIndex { m: f.m(), n: f.vars };
    let (m2, n) = (2 * idx.m, idx.n);
    let mut g = Graph::new(idx.len());
    let add = |g: &mut Graph, a: usize, b: usize| g.add_edge(a, b).expect("indices in range");
    let k4 = |g: &mut Graph, q: [usize; 4]| {
        for a in 0..4 {
            for b in a + 1..4 {
                add(g, q[a], q[b]);
            }
        }
    };

    for j in 0..=m2 {
        g.set_label(idx.c(j), format!("c_{j}"));
    }
    for j in 0..m2 {
        for h in 1..=2 {
            g.set_label(idx.ch(j, h), format!("c^{h}_{j}"));
        }
        k4(&mut g, [idx.c(j), idx.ch(j, 1), idx.ch(j, 2), idx.c(j + 1)]);
    }
    for j in 1..=m2 {
        for r in 1..=3 {
            g.set_label(idx.l(j, r), format!("l^{r}_{j}"));
            add(&mut g, idx.c(j), idx.l(j, r));
        }
    }
    for i in 1..=n + 1 {
        g.set_label(idx.x(i), format!("x_{i}"));
        for h in 1..=2 {
            g.set_label(idx.xh(i, h), format!("x^{h}_{i}"));
        }
    }
    k4(&mut g, [idx.c(m2), idx.xh(1, 1), idx.xh(1, 2), idx.x(1)]);
    for i in 1..=n {
        k4(&mut g, [idx.x(i), idx.xh(i + 1, 1), idx.xh(i + 1, 2), idx.x(i + 1)]);
    }
    for h in 1..=2 {
        let mut path: Vec<usize> = (0..m2).map(|j| idx.ch(j, h)).collect();
        path.extend((1..=n + 1).map(|i| idx.xh(i, h)));
        for w in path.windows(2) {
            add(&mut g, w[0], w[1]);
        }
    }

    // Members of each arrow neighbourhood, in path order.
    let mut lits: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); 3]; n + 1];
    for j in 1..=m2 {
        for r in 1..=3 {
            let (i, gd) = literal_gadget(f, j, r);
            lits[i][gd.k()].push(idx.l(j, r));
        }
    }
    for i in 1..=n {
        for gd in Gadget::ALL {
            let c = idx.centre(i, gd);
            let name = gd.name();
            g.set_label(c, format!("{name}_{i}"));
            g.set_label(idx.right(i, gd), format!("{name}->_{i}"));
            g.set_label(idx.left(i, gd), format!("{name}<-_{i}"));
            for r in 0..5 {
                g.set_label(idx.h(i, gd, r), format!("h^{r}_{name}_{i}"));
            }
            add(&mut g, idx.x(i), c);
            let mut path = vec![idx.h(i, gd, 1), idx.h(i, gd, 2)];
            path.extend(&lits[i][gd.k()]);
            path.extend([idx.h(i, gd, 0), c, idx.h(i, gd, 3), idx.h(i, gd, 4)]);
            for w in path.windows(2) {
                add(&mut g, w[0], w[1]);
            }
            for &p in &path {
                add(&mut g, idx.right(i, gd), p);
                add(&mut g, idx.left(i, gd), p);
            }
        }
    }
    Ok(g)
}

/// Free layout for an assignment that NAE-satisfies `f`.
///
/// Clause `j` sits at `x = 4j` on the backbone row, variable `i` at
/// `x = 8(m+i)` where `m` is the doubled clause count divided by two. The
/// row of a gadget lies above the backbone when its literal is false and
/// below when it is true; gadget `t_i` uses row `5i+2`, `f^h_i` row `5i+2h`.
/// Within a row the literal squares and the helper `h^0` and the centre form
/// a staircase whose heights decrease by `1/D`, `D = 2m + 8`, so consecutive
/// members see each other through the gaps, and the two arrows at the far
/// left and right of the row see every member. Two literals of one clause on
/// the same side are offset by `∓1/2`.
pub fn witness_layout_nae(f: &NaeFormula, a: &Assignment) -> Result<Layout, ReduceError> {
    f.check()?;
    if a.0.len() != f.vars {
        return Err(ReduceError::Assignment(format!("{} values for {} variables", a.0.len(), f.vars)));
    }
    if !a.nae_satisfies(&f.clauses) {
        return Err(ReduceError::Assignment("assignment does not NAE-satisfy the formula".into()));
    }
    let m = f.m() as i64;
    let n = f.vars as i64;
    let idx = NaeIndex { m: f.m(), n: f.vars };
    let r = |p: i64, q: i64| Rat::new(p, q);
    let z = Rat::from_integer;
    let d = 2 * m + 8;
    let right_end = 8 * (n + 1 + m);
    let mut pos = vec![(z(0), z(0)); idx.len()];

    // Backbone.
    for j in 0..2 * m {
        pos[idx.c(j as usize)] = (z(4 * j), z(0));
        for h in 1..=2 {
            pos[idx.ch(j as usize, h as usize)] = (z(4 * j + 2), r(20 - 13 * h, 10));
        }
    }
    pos[idx.c(2 * m as usize)] = (z(8 * m), z(0));
    for i in 1..=n + 1 {
        pos[idx.x(i as usize)] = (z(8 * (m + i)), z(0));
        for h in 1..=2 {
            pos[idx.xh(i as usize, h as usize)] = (z(8 * (m + i) - 6), r(20 - 13 * h, 10));
        }
    }

    // Gadget rows. Sign +1 puts a row above the backbone.
    let sign = |i: i64, gd: Gadget| -> i64 {
        let t = a.0[i as usize - 1];
        let above = if gd == Gadget::T { !t } else { t };
        if above {
            1
        } else {
            -1
        }
    };
    let row = |i: i64, gd: Gadget| -> i64 {
        let base = match gd {
            Gadget::T | Gadget::F1 => 5 * i + 2,
            Gadget::F2 => 5 * i + 4,
        };
        sign(i, gd) * base
    };
    for i in 1..=n {
        let xi = 8 * (m + i);
        for gd in Gadget::ALL {
            let y = row(i, gd);
            let (iu, hs) = (i as usize, match gd {
                Gadget::T => 0,
                Gadget::F1 => 1,
                Gadget::F2 => 2,
            });
            let cx = match gd {
                Gadget::T => z(xi),
                Gadget::F1 => z(xi) + r(1, 2),
                Gadget::F2 => z(xi) - r(1, 2),
            };
            pos[idx.centre(iu, gd)] = (cx, z(y + 1) - r(2 * m + 4, d));
            pos[idx.right(iu, gd)] = (z(-9 * i - hs), z(y));
            pos[idx.left(iu, gd)] = (z(right_end + 9 * i - hs), z(y + 1));
            let h0x = match gd {
                Gadget::T => xi - 3,
                Gadget::F1 => xi - 2,
                Gadget::F2 => xi - 4,
            };
            pos[idx.h(iu, gd, 0)] = (z(h0x), z(y + 1) - r(2 * m + 3, d));
            for k in 1..=2 {
                pos[idx.h(iu, gd, k as usize)] = (z(-9 * i + 3 * k - hs), z(y + 1) - r(k, d));
            }
            for k in 3..=4 {
                pos[idx.h(iu, gd, k as usize)] = (z(right_end + 9 * i + 3 * k - 15 - hs), z(y) + r(5 - k, d));
            }
        }
    }

    // Literal squares.
    for j in 1..=2 * m as usize {
        let clause = f.clauses[(j - 1) % f.m()];
        let value: Vec<bool> = clause.iter().map(|&l| a.value(l)).collect();
        for rr in 1..=3usize {
            let (i, gd) = literal_gadget(f, j, rr);
            let mates: Vec<usize> = (1..=3).filter(|&o| value[o - 1] == value[rr - 1]).collect();
            let off = if mates.len() == 1 {
                z(0)
            } else if mates[0] == rr {
                -r(1, 2)
            } else {
                r(1, 2)
            };
            let y = row(i as i64, gd);
            pos[idx.l(j, rr)] = (z(4 * j as i64) + off, z(y + 1) - r(j as i64 + 2, d));
        }
    }
    Ok(Layout::free(&pos))
}
