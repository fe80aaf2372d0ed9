//! Text formats for layouts, graphs, restrictions, drawings, 3-Partition
//! instances and DIMACS formulas. `#` starts a comment in every format
//! except DIMACS, which uses `c` lines.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::geometry::{Kind, Layout, Rat, Square};
use crate::graphs::Graph;
use crate::recognize::{Dir, HvLabel, Restriction};
use crate::rectilinear::RectilinearDrawing;
use crate::reduce::{Cnf, ThreePartitionInstance};

/// A parse failure at a 1-based line (0 when the input as a whole is wrong).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

/// Non-empty lines with comments removed, as (line number, tokens).
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        let t: Vec<&str> = l.split_whitespace().collect();
        (!t.is_empty()).then_some((i + 1, t))
    })
}

fn int<T: std::str::FromStr>(line: usize, s: &str, what: &str) -> Result<T, ParseError> {
    s.parse().or_else(|_| err(line, format!("bad {what} '{s}'")))
}

fn rational(line: usize, s: &str) -> Result<Rat, ParseError> {
    match s.split_once('/') {
        None => Ok(Rat::from_integer(int(line, s, "coordinate")?)),
        Some((p, q)) => {
            let p: i64 = int(line, p, "numerator")?;
            let q: i64 = int(line, q, "denominator")?;
            if q <= 0 {
                return err(line, format!("denominator must be positive in '{s}'"));
            }
            Ok(Rat::new(p, q))
        }
    }
}

fn arity(line: usize, t: &[&str], n: usize) -> Result<(), ParseError> {
    if t.len() != n {
        return err(line, format!("expected {n} fields, found {}", t.len()));
    }
    Ok(())
}

pub fn parse_layout(text: &str) -> Result<Layout, ParseError> {
    let mut it = lines(text);
    let Some((hl, h)) = it.next() else {
        return err(0, "empty input");
    };
    if h.len() != 3 || h[0] != "layout" {
        return err(hl, "expected 'layout grid|free <n>'");
    }
    let kind = match h[1] {
        "grid" => Kind::Grid,
        "free" => Kind::Free,
        k => return err(hl, format!("unknown layout kind '{k}'")),
    };
    let n: usize = int(hl, h[2], "square count")?;
    let mut squares = Vec::with_capacity(n);
    let mut seen = BTreeMap::new();
    let mut last = hl;
    for (ln, t) in it {
        last = ln;
        if t[0] != "s" {
            return err(ln, format!("unknown record '{}'", t[0]));
        }
        arity(ln, &t, 4)?;
        let id: usize = int(ln, t[1], "id")?;
        let (x, y) = (rational(ln, t[2])?, rational(ln, t[3])?);
        if kind == Kind::Grid && (!x.is_integer() || !y.is_integer()) {
            return err(ln, "grid layouts need integer coordinates");
        }
        if let Some(prev) = seen.insert(id, ln) {
            return err(ln, format!("id {id} already used on line {prev}"));
        }
        squares.push(Square::new(id, x, y));
    }
    if squares.len() != n {
        return err(last, format!("header announces {n} squares, found {}", squares.len()));
    }
    Ok(Layout::from_squares(kind, squares))
}

/// Squares are written in increasing id order.
pub fn emit_layout(l: &Layout) -> String {
    let mut s = format!("layout {} {}\n", l.kind().name(), l.len());
    for q in l.sorted().squares() {
        writeln!(s, "s {} {} {}", q.id, q.x, q.y).expect("string write");
    }
    s
}

/// Vertices in the file are 1-based; the graph is 0-based.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut it = lines(text);
    let Some((hl, h)) = it.next() else {
        return err(0, "empty input");
    };
    if h.len() != 4 || h[0] != "p" || h[1] != "usv" {
        return err(hl, "expected 'p usv <n> <m>'");
    }
    let n: usize = int(hl, h[2], "vertex count")?;
    let m: usize = int(hl, h[3], "edge count")?;
    let mut g = Graph::new(n);
    let mut edges = 0;
    let mut last = hl;
    let vertex = |ln: usize, s: &str| -> Result<usize, ParseError> {
        let v: usize = int(ln, s, "vertex")?;
        if v == 0 || v > n {
            return err(ln, format!("vertex {v} out of range 1..={n}"));
        }
        Ok(v - 1)
    };
    for (ln, t) in it {
        last = ln;
        match t[0] {
            "e" => {
                arity(ln, &t, 3)?;
                let (u, v) = (vertex(ln, t[1])?, vertex(ln, t[2])?);
                if u == v {
                    return err(ln, "self-loop");
                }
                if g.has_edge(u, v) {
                    return err(ln, "repeated edge");
                }
                g.add_edge(u, v).expect("checked");
                edges += 1;
            }
            "l" => {
                if t.len() < 3 {
                    return err(ln, "expected 'l <u> <label>'");
                }
                let u = vertex(ln, t[1])?;
                g.set_label(u, t[2..].join(" "));
            }
            r => return err(ln, format!("unknown record '{r}'")),
        }
    }
    if edges != m {
        return err(last, format!("header announces {m} edges, found {edges}"));
    }
    Ok(g)
}

pub fn emit_graph(g: &Graph) -> String {
    let mut s = format!("p usv {} {}\n", g.n(), g.edge_count());
    for v in 0..g.n() {
        if let Some(l) = g.label(v) {
            writeln!(s, "l {} {}", v + 1, l).expect("string write");
        }
    }
    for (u, v) in g.edges() {
        writeln!(s, "e {} {}", u + 1, v + 1).expect("string write");
    }
    s
}

/// Vertices are 1-based in the file. LRDU lines are oriented `u → v`; HV
/// lines are unordered.
pub fn parse_restriction(text: &str) -> Result<Restriction, ParseError> {
    let mut it = lines(text);
    let Some((hl, h)) = it.next() else {
        return err(0, "empty input");
    };
    let lrdu = match h.as_slice() {
        ["lrdu"] => true,
        ["hv"] => false,
        _ => return err(hl, "expected 'lrdu' or 'hv'"),
    };
    let mut dirs = BTreeMap::new();
    let mut hv = BTreeMap::new();
    for (ln, t) in it {
        arity(ln, &t, 3)?;
        let u: usize = int(ln, t[0], "vertex")?;
        let v: usize = int(ln, t[1], "vertex")?;
        if u == 0 || v == 0 {
            return err(ln, "vertices are numbered from 1");
        }
        let (u, v) = (u - 1, v - 1);
        let key = (u.min(v), u.max(v));
        let dup = if lrdu {
            let d = match t[2] {
                "L" => Dir::L,
                "R" => Dir::R,
                "D" => Dir::D,
                "U" => Dir::U,
                x => return err(ln, format!("unknown LRDU label '{x}'")),
            };
            dirs.contains_key(&(v, u)) || dirs.insert((u, v), d).is_some()
        } else {
            let l = match t[2] {
                "H" => HvLabel::H,
                "V" => HvLabel::V,
                x => return err(ln, format!("unknown HV label '{x}'")),
            };
            hv.insert(key, l).is_some()
        };
        if dup {
            return err(ln, format!("edge {{{}, {}}} labelled twice", u + 1, v + 1));
        }
    }
    Ok(if lrdu { Restriction::Lrdu(dirs) } else { Restriction::Hv(hv) })
}

pub fn emit_restriction(r: &Restriction) -> String {
    let mut s = String::new();
    match r {
        Restriction::Lrdu(m) => {
            s.push_str("lrdu\n");
            for (&(u, v), d) in m {
                writeln!(s, "{} {} {}", u + 1, v + 1, d.letter()).expect("string write");
            }
        }
        Restriction::Hv(m) => {
            s.push_str("hv\n");
            for (&(u, v), l) in m {
                let c = match l {
                    HvLabel::H => 'H',
                    HvLabel::V => 'V',
                };
                writeln!(s, "{} {} {c}", u + 1, v + 1).expect("string write");
            }
        }
    }
    s
}

/// Vertex ids are 0-based and must be `0..n`.
pub fn parse_drawing(text: &str) -> Result<RectilinearDrawing, ParseError> {
    let mut it = lines(text);
    let Some((hl, h)) = it.next() else {
        return err(0, "empty input");
    };
    if h.len() != 3 || h[0] != "drawing" {
        return err(hl, "expected 'drawing <n> <m>'");
    }
    let n: usize = int(hl, h[1], "vertex count")?;
    let m: usize = int(hl, h[2], "edge count")?;
    let mut pos: Vec<Option<(i64, i64)>> = vec![None; n];
    let mut edges = Vec::new();
    let mut last = hl;
    let id = |ln: usize, s: &str| -> Result<usize, ParseError> {
        let v: usize = int(ln, s, "vertex")?;
        if v >= n {
            return err(ln, format!("vertex {v} out of range 0..{n}"));
        }
        Ok(v)
    };
    for (ln, t) in it {
        last = ln;
        match t[0] {
            "v" => {
                arity(ln, &t, 4)?;
                let v = id(ln, t[1])?;
                if pos[v].is_some() {
                    return err(ln, format!("vertex {v} placed twice"));
                }
                pos[v] = Some((int(ln, t[2], "coordinate")?, int(ln, t[3], "coordinate")?));
            }
            "e" => {
                arity(ln, &t, 3)?;
                let (u, v) = (id(ln, t[1])?, id(ln, t[2])?);
                if u == v {
                    return err(ln, "self-loop");
                }
                edges.push((ln, u, v));
            }
            r => return err(ln, format!("unknown record '{r}'")),
        }
    }
    if edges.len() != m {
        return err(last, format!("header announces {m} edges, found {}", edges.len()));
    }
    let mut graph = Graph::new(n);
    for (ln, u, v) in edges {
        if graph.has_edge(u, v) {
            return err(ln, "repeated edge");
        }
        graph.add_edge(u, v).expect("checked");
    }
    let pos = match pos.iter().position(|p| p.is_none()) {
        Some(v) => return err(last, format!("vertex {v} has no position")),
        None => pos.into_iter().map(|p| p.expect("checked")).collect(),
    };
    Ok(RectilinearDrawing { graph, pos })
}

pub fn emit_drawing(d: &RectilinearDrawing) -> String {
    let mut s = format!("drawing {} {}\n", d.graph.n(), d.graph.edge_count());
    for (v, (x, y)) in d.pos.iter().enumerate() {
        writeln!(s, "v {v} {x} {y}").expect("string write");
    }
    for (u, v) in d.graph.edges() {
        writeln!(s, "e {u} {v}").expect("string write");
    }
    s
}

/// `B` on the first line, the numbers on the second. Instance conditions are
/// checked.
pub fn parse_3partition(text: &str) -> Result<ThreePartitionInstance, ParseError> {
    let rows: Vec<(usize, Vec<&str>)> = lines(text).collect();
    if rows.len() != 2 {
        return err(rows.last().map_or(0, |r| r.0), format!("expected 2 lines, found {}", rows.len()));
    }
    arity(rows[0].0, &rows[0].1, 1)?;
    let b: u64 = int(rows[0].0, rows[0].1[0], "bound")?;
    let a: Vec<u64> = rows[1].1.iter().map(|s| int(rows[1].0, s, "number")).collect::<Result<_, _>>()?;
    ThreePartitionInstance::new(b, a).or_else(|e| err(rows[1].0, e.to_string()))
}

pub fn emit_3partition(inst: &ThreePartitionInstance) -> String {
    let a: Vec<String> = inst.a.iter().map(|x| x.to_string()).collect();
    format!("{}\n{}\n", inst.b, a.join(" "))
}

/// DIMACS CNF with exactly three literals per clause; clauses may span lines.
pub fn parse_dimacs(text: &str) -> Result<Cnf, ParseError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut cur: Vec<i64> = Vec::new();
    let mut last = 0;
    for (i, l) in text.lines().enumerate() {
        let ln = i + 1;
        let t: Vec<&str> = l.split_whitespace().collect();
        if t.is_empty() || t[0] == "c" || t[0] == "%" {
            continue;
        }
        last = ln;
        if t[0] == "p" {
            if header.is_some() {
                return err(ln, "second header");
            }
            if t.len() != 4 || t[1] != "cnf" {
                return err(ln, "expected 'p cnf <n> <m>'");
            }
            header = Some((int(ln, t[2], "variable count")?, int(ln, t[3], "clause count")?, ln));
            continue;
        }
        let Some((n, _, _)) = header else {
            return err(ln, "clause before header");
        };
        for s in t {
            let x: i64 = int(ln, s, "literal")?;
            if x == 0 {
                if cur.len() != 3 {
                    return err(ln, format!("clause with {} literals; exactly 3 are required", cur.len()));
                }
                clauses.push([cur[0], cur[1], cur[2]]);
                cur.clear();
            } else {
                if x.unsigned_abs() as usize > n {
                    return err(ln, format!("literal {x} exceeds {n} variables"));
                }
                if cur.iter().any(|&o| o.abs() == x.abs()) {
                    return err(ln, format!("variable {} repeated in a clause", x.abs()));
                }
                cur.push(x);
            }
        }
    }
    let Some((vars, m, hl)) = header else {
        return err(0, "missing 'p cnf' header");
    };
    if !cur.is_empty() {
        return err(last, "last clause is not terminated by 0");
    }
    if clauses.len() != m {
        return err(hl, format!("header announces {m} clauses, found {}", clauses.len()));
    }
    Ok(Cnf { vars, clauses })
}

pub fn emit_dimacs(f: &Cnf) -> String {
    let mut s = format!("p cnf {} {}\n", f.vars, f.clauses.len());
    for c in &f.clauses {
        writeln!(s, "{} {} {} 0", c[0], c[1], c[2]).expect("string write");
    }
    s
}
