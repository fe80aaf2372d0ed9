use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::Ordering;

use super::search::{unit_facts, Control, Problem, SearchBudget, Stop};
use super::{free_domain, grid_domain, RecognizeError};
use crate::geometry::{Axis, Layout};
use crate::graphs::{v_isomorphic_structures, Class, Graph, VStructure};

/// One representative layout per V-isomorphism class, with the searched box.
#[derive(Clone, Debug)]
pub struct ClassEnumeration {
    pub classes: Vec<Layout>,
    /// Complete layouts visited (before bucketing).
    pub layouts: u64,
    pub nodes: u64,
    pub domain: String,
}

type DegreeKey = Vec<[usize; 4]>;

/// Invariant of a structure under the eight relation transforms: the least
/// sorted list of per-vertex (out-h, in-h, out-v, in-v) degrees.
fn signature(s: &VStructure) -> DegreeKey {
    let mut deg = vec![[0usize; 4]; s.n];
    for &(a, b) in &s.horizontal {
        deg[a][0] += 1;
        deg[b][1] += 1;
    }
    for &(a, b) in &s.vertical {
        deg[a][2] += 1;
        deg[b][3] += 1;
    }
    let mut best: Option<DegreeKey> = None;
    for swap in [false, true] {
        for inv_h in [false, true] {
            for inv_v in [false, true] {
                let mut key: DegreeKey = deg
                    .iter()
                    .map(|&[oh, ih, ov, iv]| {
                        let h = if inv_h { [ih, oh] } else { [oh, ih] };
                        let v = if inv_v { [iv, ov] } else { [ov, iv] };
                        if swap {
                            [v[0], v[1], h[0], h[1]]
                        } else {
                            [h[0], h[1], v[0], v[1]]
                        }
                    })
                    .collect();
                key.sort_unstable();
                if best.as_ref().map_or(true, |b| key < *b) {
                    best = Some(key);
                }
            }
        }
    }
    best.unwrap_or_default()
}

/// Enumerate every layout of `g` in the class's search box and keep one per
/// V-isomorphism class. For the grid class the box is the compressed even
/// lattice, which contains a layout of every class.
pub fn enumerate_layout_classes(
    g: &Graph,
    cls: Class,
    denominator: Option<i64>,
    budget: &SearchBudget,
) -> Result<ClassEnumeration, RecognizeError> {
    let (domain, sym, label) = match cls {
        Class::Usgv => grid_domain(g.n(), None, None)?,
        Class::Usv => {
            let (d, l) = free_domain(g.n(), denominator, None)?;
            (d, super::search::Symmetry::Full, l)
        }
    };
    let unit = domain.unit;
    let problem = Problem::new(g, domain, None, sym);
    let ctl = Control::new(budget);
    let mut buckets: BTreeMap<DegreeKey, Vec<(VStructure, Layout)>> = BTreeMap::new();
    let mut order: Vec<(DegreeKey, usize)> = Vec::new();
    let mut layouts = 0u64;
    let n = g.n();
    let mut emit = |p: &Vec<(i64, i64)>| {
        layouts += 1;
        let mut s = VStructure { n, horizontal: BTreeSet::new(), vertical: BTreeSet::new() };
        for f in unit_facts(p, &vec![true; n], unit) {
            match f.axis {
                Axis::Horizontal => s.horizontal.insert((f.from, f.to)),
                Axis::Vertical => s.vertical.insert((f.from, f.to)),
            };
        }
        let key = signature(&s);
        let bucket = buckets.entry(key.clone()).or_default();
        if !bucket.iter().any(|(t, _)| v_isomorphic_structures(&s, t)) {
            order.push((key, bucket.len()));
            bucket.push((s, problem.to_layout(p)));
        }
        true
    };
    let res = problem.for_each(&ctl, &mut emit);
    let nodes = ctl.nodes.load(Ordering::Relaxed);
    if let Err(Stop::Budget) = res {
        return Err(RecognizeError::Partial { nodes, classes: order.len() });
    }
    let classes = order.iter().map(|(k, i)| buckets[k][*i].1.clone()).collect();
    Ok(ClassEnumeration { classes, layouts, nodes, domain: label })
}
