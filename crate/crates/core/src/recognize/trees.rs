//! Layouts of trees by extreme placement.
//!
//! Vertices are laid out in BFS order. Each child goes beyond every square
//! placed so far along the direction of its edge and is aligned with its
//! parent on the other axis, so it sees its parent and nothing else and never
//! lies between two earlier squares. A vertex placed vertically opens a fresh
//! row, one placed horizontally a fresh column. In the free class the fresh
//! axis may carry two children on one side, offset by ±1/2 against the
//! parent; their bands only touch, so they do not see each other.

use std::collections::VecDeque;

use thiserror::Error;

use crate::geometry::{edge_set, Kind, Layout, Rat};
use crate::graphs::{Class, Graph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("graph is not a tree")]
    NotATree,
    #[error("maximum degree {found} exceeds {limit}")]
    DegreeTooLarge { found: usize, limit: usize },
    #[error("internal error: {0}")]
    Internal(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Right,
    Left,
    Up,
    Down,
}

impl Side {
    fn horizontal(self) -> bool {
        matches!(self, Side::Right | Side::Left)
    }
}

/// Directions available to the children of a vertex, singles first and the
/// doubled direction (if any) last.
fn slots(attached: Option<Side>, doubles: bool) -> (Vec<Side>, Option<Side>) {
    let (singles, double) = match attached {
        None => (vec![Side::Right, Side::Left, Side::Down], Side::Up),
        Some(s) if s.horizontal() => (vec![s, Side::Down], Side::Up),
        Some(s) => (vec![s, Side::Left], Side::Right),
    };
    if doubles {
        (singles, Some(double))
    } else {
        let mut all = singles;
        all.push(double);
        (all, None)
    }
}

/// Layout of a tree: maximum degree 4 for the grid class, 5 for the free
/// class. Square `v` carries id `v`; the result is checked by extraction.
pub fn tree_layout(t: &Graph, cls: Class) -> Result<Layout, TreeError> {
    if !t.is_tree() {
        return Err(TreeError::NotATree);
    }
    let limit = match cls {
        Class::Usgv => 4,
        Class::Usv => 5,
    };
    if t.max_degree() > limit {
        return Err(TreeError::DegreeTooLarge { found: t.max_degree(), limit });
    }
    let kind = match cls {
        Class::Usgv => Kind::Grid,
        Class::Usv => Kind::Free,
    };
    let n = t.n();
    if n == 0 {
        return Ok(Layout::new(kind));
    }
    let doubles = cls == Class::Usv;
    let gap = Rat::from_integer(if doubles { 4 } else { 2 });
    let half = Rat::new(1, 2);

    let mut pos: Vec<Option<(Rat, Rat)>> = vec![None; n];
    let mut attached: Vec<Option<Side>> = vec![None; n];
    let zero = Rat::from_integer(0);
    pos[0] = Some((zero, zero));
    let (mut min_x, mut max_x, mut min_y, mut max_y) = (zero, zero, zero, zero);
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        let (vx, vy) = pos[v].expect("placed");
        let children: Vec<usize> = t.neighbors(v).iter().copied().filter(|&w| pos[w].is_none()).collect();
        let (singles, double) = slots(attached[v], doubles);
        let mut assignment: Vec<(Side, Rat)> = singles.iter().map(|&s| (s, zero)).collect();
        if let Some(d) = double {
            if children.len() > singles.len() + 1 {
                assignment.push((d, half));
                assignment.push((d, -half));
            } else {
                assignment.push((d, zero));
            }
        }
        if children.len() > assignment.len() {
            return Err(TreeError::Internal(format!("vertex {v} has too many children")));
        }
        for (&c, &(side, off)) in children.iter().zip(&assignment) {
            let p = match side {
                Side::Right => {
                    max_x += gap;
                    (max_x, vy + off)
                }
                Side::Left => {
                    min_x -= gap;
                    (min_x, vy + off)
                }
                Side::Up => {
                    max_y += gap;
                    (vx + off, max_y)
                }
                Side::Down => {
                    min_y -= gap;
                    (vx + off, min_y)
                }
            };
            pos[c] = Some(p);
            attached[c] = Some(side);
            queue.push_back(c);
        }
    }
    let pts: Vec<(Rat, Rat)> = pos.into_iter().map(|p| p.expect("tree is connected")).collect();
    let layout = Layout::free(&pts).with_kind(kind).normalized();
    match edge_set(&layout) {
        Ok(e) if e == t.edge_set() => Ok(layout),
        Ok(_) => Err(TreeError::Internal("layout does not realise the tree".into())),
        Err(e) => Err(TreeError::Internal(e.to_string())),
    }
}
