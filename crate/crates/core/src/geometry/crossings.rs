use super::layout::ensure_valid;
use super::visibility::relation_unchecked;
use super::{Axis, GeometryError, Kind, Layout, Rat, VisibilityFact};

/// A horizontal and a vertical visibility whose center-to-center segments
/// cross at `at`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub horizontal: VisibilityFact,
    pub vertical: VisibilityFact,
    pub at: (Rat, Rat),
}

pub fn layout_crossings(layout: &Layout) -> Result<Vec<Crossing>, GeometryError> {
    if layout.kind() != Kind::Grid {
        return Err(GeometryError::NotGrid);
    }
    ensure_valid(layout)?;
    let half = Rat::new(1, 2);
    let center = |id: usize| {
        let s = layout.get(id).expect("fact ids are present");
        (s.x + half, s.y + half)
    };
    let facts = relation_unchecked(layout);
    let (hs, vs): (Vec<_>, Vec<_>) = facts.into_iter().partition(|f| f.axis == Axis::Horizontal);
    let mut out = Vec::new();
    for h in &hs {
        let (x0, y) = center(h.from);
        let (x1, _) = center(h.to);
        for v in &vs {
            let (x, y1) = center(v.from);
            let (_, y0) = center(v.to);
            if x0 < x && x < x1 && y0 < y && y < y1 {
                out.push(Crossing { horizontal: *h, vertical: *v, at: (x, y) });
            }
        }
    }
    Ok(out)
}
