//! Exact recognition by complete backtracking search, enumeration of layout
//! classes and constructive layouts for trees.

mod classes;
mod restriction;
mod search;
mod trees;

pub use classes::{enumerate_layout_classes, ClassEnumeration};
pub use restriction::{layout_satisfies, restriction_valid, Dir, HvLabel, Restriction, RestrictionError};
pub use search::SearchBudget;
pub use trees::{tree_layout, TreeError};

use std::sync::atomic::Ordering;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::geometry::{edge_set, Kind, Layout, Rat};
use crate::graphs::{Class, Graph, Verdict};
use search::{Control, Domain, Problem, Stop, Symmetry};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecognizeError {
    #[error("invalid parameter: {0}")]
    BadParameter(String),
    #[error("invalid restriction: {0}")]
    Restriction(#[from] RestrictionError),
    #[error("restriction violates the validity conditions")]
    InvalidRestriction,
    #[error("internal error: search produced a layout that does not realise the graph")]
    Unsound,
    #[error("budget exhausted after {nodes} nodes with {classes} classes found")]
    Partial { nodes: u64, classes: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Yes(Layout),
    No,
    Unknown,
}

impl Outcome {
    pub fn verdict(&self) -> Verdict {
        match self {
            Outcome::Yes(_) => Verdict::Yes,
            Outcome::No => Verdict::No,
            Outcome::Unknown => Verdict::Unknown,
        }
    }

    pub fn layout(&self) -> Option<&Layout> {
        match self {
            Outcome::Yes(l) => Some(l),
            _ => None,
        }
    }
}

/// Result of a recognition run together with what was searched.
#[derive(Clone, Debug)]
pub struct Recognition {
    pub outcome: Outcome,
    pub nodes: u64,
    pub elapsed: Duration,
    pub domain: String,
    pub engine: &'static str,
}

impl Recognition {
    pub fn verdict(&self) -> Verdict {
        self.outcome.verdict()
    }
}

/// Grid search domain. Without explicit bounds the search uses the even
/// sublattice `{0, 2, …, 2n−2}²`: the visibilities of a grid layout depend
/// only on the order of its distinct rows and columns, so compressing them
/// to consecutive even values keeps the layout valid and its relations
/// identical. That sublattice lies inside `[0, 2n−2]²`.
fn grid_domain(n: usize, width: Option<i64>, height: Option<i64>) -> Result<(Domain, Symmetry, String), RecognizeError> {
    match (width, height) {
        (None, None) => {
            let span = 2 * (n.max(1) as i64 - 1);
            Ok((
                Domain { unit: 1, stride: 2, span_x: span, span_y: span, grid: true, kind: Kind::Grid },
                Symmetry::Full,
                format!("grid, rows and columns compressed to even values in [0, {span}]"),
            ))
        }
        _ => {
            let default = 2 * n.max(1) as i64 - 1;
            let w = width.unwrap_or(default);
            let h = height.unwrap_or(default);
            if w < 1 || h < 1 {
                return Err(RecognizeError::BadParameter("width and height must be at least 1".into()));
            }
            let sym = if w == h { Symmetry::Full } else { Symmetry::Reflections };
            Ok((
                Domain { unit: 1, stride: 1, span_x: w - 1, span_y: h - 1, grid: true, kind: Kind::Grid },
                sym,
                format!("grid, integer positions in [0, {}] x [0, {}]", w - 1, h - 1),
            ))
        }
    }
}

fn free_domain(n: usize, denominator: Option<i64>, bound: Option<Rat>) -> Result<(Domain, String), RecognizeError> {
    let d = denominator.unwrap_or(n.max(1) as i64);
    if d < 1 {
        return Err(RecognizeError::BadParameter("denominator must be positive".into()));
    }
    let b = bound.unwrap_or(Rat::from_integer(n.max(1) as i64));
    if b < Rat::from_integer(1) {
        return Err(RecognizeError::BadParameter("bound must be at least 1".into()));
    }
    let span = (b * d).floor().to_integer();
    Ok((
        Domain { unit: d, stride: 1, span_x: span, span_y: span, grid: false, kind: Kind::Free },
        format!("free, positions a/{d} with 0 <= a <= {span}"),
    ))
}

fn run(
    g: &Graph,
    domain: Domain,
    symmetry: Symmetry,
    restriction: Option<&Restriction>,
    budget: &SearchBudget,
    label: String,
    engine: &'static str,
) -> Result<Recognition, RecognizeError> {
    if let Some(r) = restriction {
        if !restriction_valid(g, r)? {
            return Err(RecognizeError::InvalidRestriction);
        }
    }
    // Restrictions are not invariant under the symmetries of the square.
    let symmetry = if restriction.is_some() { Symmetry::None } else { symmetry };
    let start = Instant::now();
    let problem = Problem::new(g, domain, restriction, symmetry);
    let ctl = Control::new(budget);
    let outcome = match problem.find_one(budget, &ctl) {
        Ok(Some(p)) => {
            let layout = problem.to_layout(&p);
            let ok = edge_set(&layout).map(|e| e == g.edge_set()).unwrap_or(false)
                && restriction.map_or(true, |r| layout_satisfies(&layout, r).unwrap_or(false));
            if !ok {
                return Err(RecognizeError::Unsound);
            }
            Outcome::Yes(layout)
        }
        Ok(None) => Outcome::No,
        Err(Stop::Budget) => Outcome::Unknown,
    };
    Ok(Recognition {
        outcome,
        nodes: ctl.nodes.load(Ordering::Relaxed),
        elapsed: start.elapsed(),
        domain: label,
        engine,
    })
}

/// Decide membership in the grid class by exhaustive search. With `width`
/// and `height` the search is restricted to layouts fitting that box.
pub fn recognize_usgv(
    g: &Graph,
    width: Option<i64>,
    height: Option<i64>,
    restriction: Option<&Restriction>,
    budget: &SearchBudget,
) -> Result<Recognition, RecognizeError> {
    let (domain, sym, label) = grid_domain(g.n(), width, height)?;
    run(g, domain, sym, restriction, budget, label, "grid-search")
}

/// Decide membership in the free class by exhaustive search over positions
/// `a/denominator` with extent at most `bound` (defaults: `n` and `n`).
pub fn recognize_usv(
    g: &Graph,
    denominator: Option<i64>,
    bound: Option<Rat>,
    budget: &SearchBudget,
) -> Result<Recognition, RecognizeError> {
    let (domain, label) = free_domain(g.n(), denominator, bound)?;
    run(g, domain, Symmetry::Full, None, budget, label, "free-search")
}

/// Dispatch on the class.
pub fn recognize(g: &Graph, cls: Class, budget: &SearchBudget) -> Result<Recognition, RecognizeError> {
    match cls {
        Class::Usgv => recognize_usgv(g, None, None, None, budget),
        Class::Usv => recognize_usv(g, None, None, budget),
    }
}
