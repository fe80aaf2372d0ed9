use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::geometry::{visibility_relation, Axis, GeometryError, Layout, VisibilityFact};
use crate::graphs::Graph;

/// Direction label of an oriented edge `(u, v)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    /// `v` sees `u` from the left.
    L,
    /// `u` sees `v` from the left.
    R,
    /// `u` sees `v` from above.
    D,
    /// `v` sees `u` from above.
    U,
}

impl Dir {
    pub fn complement(self) -> Dir {
        match self {
            Dir::L => Dir::R,
            Dir::R => Dir::L,
            Dir::D => Dir::U,
            Dir::U => Dir::D,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Dir::L => 'L',
            Dir::R => 'R',
            Dir::D => 'D',
            Dir::U => 'U',
        }
    }

    /// The directed fact a labelled edge `(u, v)` demands.
    pub fn required_fact(self, u: usize, v: usize) -> VisibilityFact {
        match self {
            Dir::L => VisibilityFact { from: v, to: u, axis: Axis::Horizontal },
            Dir::R => VisibilityFact { from: u, to: v, axis: Axis::Horizontal },
            Dir::D => VisibilityFact { from: u, to: v, axis: Axis::Vertical },
            Dir::U => VisibilityFact { from: v, to: u, axis: Axis::Vertical },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HvLabel {
    H,
    V,
}

impl HvLabel {
    pub fn axis(self) -> Axis {
        match self {
            HvLabel::H => Axis::Horizontal,
            HvLabel::V => Axis::Vertical,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Restriction {
    /// Keys are oriented edges, one orientation per edge.
    Lrdu(BTreeMap<(usize, usize), Dir>),
    /// Keys are edges `(min, max)`.
    Hv(BTreeMap<(usize, usize), HvLabel>),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RestrictionError {
    #[error("edge {{{0}, {1}}} has no label")]
    Missing(usize, usize),
    #[error("label on {{{0}, {1}}}, which is not an edge")]
    NonEdge(usize, usize),
    #[error("edge {{{0}, {1}}} is labelled in both orientations")]
    Twice(usize, usize),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

impl Restriction {
    /// Undirected edges covered by the labelling.
    pub fn edges(&self) -> BTreeSet<(usize, usize)> {
        match self {
            Restriction::Lrdu(m) => m.keys().map(|&(u, v)| key(u, v)).collect(),
            Restriction::Hv(m) => m.keys().map(|&(u, v)| key(u, v)).collect(),
        }
    }

    /// Whether the visibilities of an oriented or unordered pair meet the
    /// label. `facts` must contain every fact between `u` and `v`.
    pub(crate) fn pair_ok(&self, u: usize, v: usize, has: impl Fn(VisibilityFact) -> bool) -> bool {
        match self {
            Restriction::Lrdu(m) => {
                if let Some(d) = m.get(&(u, v)) {
                    has(d.required_fact(u, v))
                } else if let Some(d) = m.get(&(v, u)) {
                    has(d.required_fact(v, u))
                } else {
                    true
                }
            }
            Restriction::Hv(m) => match m.get(&key(u, v)) {
                Some(l) => {
                    let axis = l.axis();
                    has(VisibilityFact { from: u, to: v, axis }) || has(VisibilityFact { from: v, to: u, axis })
                }
                None => true,
            },
        }
    }

    fn check_domain(&self, g: &Graph) -> Result<(), RestrictionError> {
        let graph_edges = g.edge_set();
        if let Restriction::Lrdu(m) = self {
            for &(u, v) in m.keys() {
                if m.contains_key(&(v, u)) {
                    let (a, b) = key(u, v);
                    return Err(RestrictionError::Twice(a, b));
                }
            }
        }
        let labelled = self.edges();
        if let Some(&(u, v)) = labelled.difference(&graph_edges).next() {
            return Err(RestrictionError::NonEdge(u, v));
        }
        if let Some(&(u, v)) = graph_edges.difference(&labelled).next() {
            return Err(RestrictionError::Missing(u, v));
        }
        Ok(())
    }
}

/// Validity of a restriction. LRDU: for every `(u, v)` labelled `X` and every
/// third vertex `w`, `σ(u,w) ≠ X ≠ σ(w,v)` and `σ(v,w) ≠ X̄ ≠ σ(w,u)`.
/// HV: at most two `H` and at most two `V` edges at every vertex.
pub fn restriction_valid(g: &Graph, r: &Restriction) -> Result<bool, RestrictionError> {
    r.check_domain(g)?;
    Ok(match r {
        Restriction::Lrdu(m) => m.iter().all(|(&(u, v), &x)| {
            let xb = x.complement();
            (0..g.n()).filter(|&w| w != u && w != v).all(|w| {
                m.get(&(u, w)) != Some(&x)
                    && m.get(&(w, v)) != Some(&x)
                    && m.get(&(v, w)) != Some(&xb)
                    && m.get(&(w, u)) != Some(&xb)
            })
        }),
        Restriction::Hv(m) => (0..g.n()).all(|v| {
            let count = |label: HvLabel| m.iter().filter(|(&(a, b), &l)| (a == v || b == v) && l == label).count();
            count(HvLabel::H) <= 2 && count(HvLabel::V) <= 2
        }),
    })
}

/// Whether every label's implication holds in the layout. Square ids are
/// taken as vertex indices.
pub fn layout_satisfies(l: &Layout, r: &Restriction) -> Result<bool, RestrictionError> {
    let facts = visibility_relation(l)?;
    let realised: BTreeSet<(usize, usize)> = facts.iter().map(|f| key(f.from, f.to)).collect();
    let labelled = r.edges();
    if let Some(&(u, v)) = labelled.difference(&realised).next() {
        return Err(RestrictionError::Missing(u, v));
    }
    if let Some(&(u, v)) = realised.difference(&labelled).next() {
        return Err(RestrictionError::NonEdge(u, v));
    }
    Ok(labelled.iter().all(|&(u, v)| r.pair_ok(u, v, |f| facts.contains(&f))))
}
