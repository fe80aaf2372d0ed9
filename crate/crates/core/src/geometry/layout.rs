use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};

use super::{GeometryError, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Grid,
    Free,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Grid => "grid",
            Kind::Free => "free",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Square {
    pub id: usize,
    pub x: Rat,
    pub y: Rat,
}

impl Square {
    pub fn new(id: usize, x: Rat, y: Rat) -> Self {
        Square { id, x, y }
    }
}

/// Two closed unit squares are disjoint iff they are more than one unit apart
/// along some axis.
pub(crate) fn disjoint(a: &Square, b: &Square) -> bool {
    let one = Rat::from_integer(1);
    (a.x - b.x).abs() > one || (a.y - b.y).abs() > one
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Layout {
    kind: Kind,
    squares: Vec<Square>,
}

impl Layout {
    pub fn new(kind: Kind) -> Self {
        Layout { kind, squares: Vec::new() }
    }

    pub fn from_squares(kind: Kind, squares: Vec<Square>) -> Self {
        Layout { kind, squares }
    }

    /// Grid layout with squares `0..points.len()` at the given integer cells.
    pub fn grid(points: &[(i64, i64)]) -> Self {
        let squares = points
            .iter()
            .enumerate()
            .map(|(id, &(x, y))| Square::new(id, Rat::from_integer(x), Rat::from_integer(y)))
            .collect();
        Layout { kind: Kind::Grid, squares }
    }

    /// Free layout with squares `0..points.len()`.
    pub fn free(points: &[(Rat, Rat)]) -> Self {
        let squares = points
            .iter()
            .enumerate()
            .map(|(id, &(x, y))| Square::new(id, x, y))
            .collect();
        Layout { kind: Kind::Free, squares }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn with_kind(mut self, kind: Kind) -> Self {
        self.kind = kind;
        self
    }

    pub fn squares(&self) -> &[Square] {
        &self.squares
    }

    pub fn len(&self) -> usize {
        self.squares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }

    pub fn push(&mut self, id: usize, x: Rat, y: Rat) {
        self.squares.push(Square::new(id, x, y));
    }

    pub fn get(&self, id: usize) -> Option<&Square> {
        self.squares.iter().find(|s| s.id == id)
    }

    pub(crate) fn index_of(&self, id: usize) -> Result<usize, GeometryError> {
        self.squares
            .iter()
            .position(|s| s.id == id)
            .ok_or(GeometryError::UnknownId(id))
    }

    pub fn ids(&self) -> Vec<usize> {
        self.squares.iter().map(|s| s.id).collect()
    }

    pub fn remove(&mut self, id: usize) -> Result<Square, GeometryError> {
        let i = self.index_of(id)?;
        Ok(self.squares.remove(i))
    }

    /// Squares sorted by id; the canonical order used for emission.
    pub fn sorted(&self) -> Layout {
        let mut squares = self.squares.clone();
        squares.sort_by_key(|s| s.id);
        Layout { kind: self.kind, squares }
    }

    pub fn translate(&self, dx: Rat, dy: Rat) -> Layout {
        self.map(|x, y| (x + dx, y + dy))
    }

    /// Swap the two axes. Maps horizontal visibilities to vertical ones.
    pub fn transpose(&self) -> Layout {
        self.map(|x, y| (y, x))
    }

    /// Mirror at the vertical line x = 0 (lower-left corners stay lower-left).
    pub fn mirror_x(&self) -> Layout {
        let one = Rat::from_integer(1);
        self.map(|x, y| (-x - one, y))
    }

    /// Rotate by 90 degrees counter-clockwise about the origin.
    pub fn rotate90(&self) -> Layout {
        let one = Rat::from_integer(1);
        self.map(|x, y| (-y - one, x))
    }

    pub fn scale(&self, factor: Rat) -> Layout {
        self.map(|x, y| (x * factor, y * factor))
    }

    /// Translate so that the minimum x and minimum y are both 0.
    pub fn normalized(&self) -> Layout {
        match self.bounds() {
            Some((x0, y0, _, _)) => self.translate(-x0, -y0),
            None => self.clone(),
        }
    }

    /// `(min x, min y, max x, max y)` over lower-left corners.
    pub fn bounds(&self) -> Option<(Rat, Rat, Rat, Rat)> {
        let first = self.squares.first()?;
        let mut b = (first.x, first.y, first.x, first.y);
        for s in &self.squares[1..] {
            b.0 = b.0.min(s.x);
            b.1 = b.1.min(s.y);
            b.2 = b.2.max(s.x);
            b.3 = b.3.max(s.y);
        }
        Some(b)
    }

    /// Extent of the occupied region as `(width, height)`, counting the unit
    /// side: a single square has extent 1 × 1.
    pub fn extent(&self) -> (Rat, Rat) {
        match self.bounds() {
            Some((x0, y0, x1, y1)) => {
                let one = Rat::from_integer(1);
                (x1 - x0 + one, y1 - y0 + one)
            }
            None => (Rat::zero(), Rat::zero()),
        }
    }

    fn map(&self, f: impl Fn(Rat, Rat) -> (Rat, Rat)) -> Layout {
        let squares = self
            .squares
            .iter()
            .map(|s| {
                let (x, y) = f(s.x, s.y);
                Square::new(s.id, x, y)
            })
            .collect();
        Layout { kind: self.kind, squares }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Violation {
    /// Two closed squares intersect (overlap or touch).
    Intersecting(usize, usize),
    NonIntegerGrid(usize),
    NegativeGrid(usize),
    DuplicateId(usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Intersecting(a, b) => write!(f, "squares {a} and {b} intersect or touch"),
            Violation::NonIntegerGrid(a) => write!(f, "grid square {a} has a non-integer coordinate"),
            Violation::NegativeGrid(a) => write!(f, "grid square {a} has a negative coordinate"),
            Violation::DuplicateId(a) => write!(f, "duplicate square id {a}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

pub fn validate_layout(layout: &Layout) -> ValidationReport {
    let mut violations = Vec::new();
    let mut seen = BTreeSet::new();
    for s in &layout.squares {
        if !seen.insert(s.id) {
            violations.push(Violation::DuplicateId(s.id));
        }
        if layout.kind == Kind::Grid {
            if !s.x.is_integer() || !s.y.is_integer() {
                violations.push(Violation::NonIntegerGrid(s.id));
            }
            if s.x.is_negative() || s.y.is_negative() {
                violations.push(Violation::NegativeGrid(s.id));
            }
        }
    }
    // Sweep by x so that only squares less than one unit apart horizontally
    // are compared.
    let mut order: Vec<&Square> = layout.squares.iter().collect();
    order.sort_by(|a, b| a.x.cmp(&b.x));
    let one = Rat::from_integer(1);
    for (i, a) in order.iter().enumerate() {
        for b in &order[i + 1..] {
            if b.x - a.x > one {
                break;
            }
            if !disjoint(a, b) {
                let (p, q) = (a.id.min(b.id), a.id.max(b.id));
                violations.push(Violation::Intersecting(p, q));
            }
        }
    }
    ValidationReport { violations }
}

pub(crate) fn ensure_valid(layout: &Layout) -> Result<(), GeometryError> {
    let report = validate_layout(layout);
    if report.is_ok() {
        Ok(())
    } else {
        Err(GeometryError::Invalid(report))
    }
}
