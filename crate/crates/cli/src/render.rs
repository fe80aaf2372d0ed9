//! SVG pictures of layouts. Output depends only on the layout and options.

use std::fmt::Write;

use usvkit::geometry::{layout_crossings, visibility_channel, visibility_relation, GeometryError};
use usvkit::{Axis, Layout, Rat};

#[derive(Clone, Debug)]
pub struct RenderOptions {
    /// Pixels per unit.
    pub scale: u32,
    pub show_visibilities: bool,
    pub show_crossings: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions { scale: 40, show_visibilities: false, show_crossings: false }
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.2}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn f(r: Rat) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Squares are drawn with y growing upwards. Crossing markers need a grid
/// layout.
pub fn render_svg(l: &Layout, opts: &RenderOptions) -> Result<String, GeometryError> {
    let facts = visibility_relation(l)?;
    let crossings = if opts.show_crossings { layout_crossings(l)? } else { Vec::new() };
    let one = Rat::from_integer(1);
    let zero = Rat::from_integer(0);
    let (minx, miny, maxx, maxy) = l.bounds().unwrap_or((zero, zero, -one, -one));
    let s = opts.scale as f64;
    let margin = 0.5;
    let w = (f(maxx - minx) + 1.0 + 2.0 * margin) * s;
    let h = (f(maxy - miny) + 1.0 + 2.0 * margin) * s;
    let px = |x: Rat| (f(x - minx) + margin) * s;
    let py = |y: Rat| (f(maxy + one - y) + margin) * s;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        num(w),
        num(h),
        num(w),
        num(h)
    );
    let _ = writeln!(out, r#"<g font-family="sans-serif" font-size="{}">"#, num(s * 0.4));
    for q in l.sorted().squares() {
        let _ = writeln!(
            out,
            r#"<rect class="square" x="{}" y="{}" width="{}" height="{}" fill="white" stroke="black"/>"#,
            num(px(q.x)),
            num(py(q.y + one)),
            num(s),
            num(s)
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="middle" dominant-baseline="central">{}</text>"#,
            num(px(q.x) + s / 2.0),
            num(py(q.y) - s / 2.0),
            q.id
        );
    }
    if opts.show_visibilities {
        let half = Rat::new(1, 2);
        for fact in &facts {
            let (lo, hi) = visibility_channel(l, *fact)?.expect("relation facts have a channel");
            let mid = (lo + hi) * half;
            let a = l.get(fact.from).expect("fact ids are present");
            let b = l.get(fact.to).expect("fact ids are present");
            let (x1, y1, x2, y2) = match fact.axis {
                Axis::Horizontal => (px(a.x + one), py(mid), px(b.x), py(mid)),
                Axis::Vertical => (px(mid), py(a.y), px(mid), py(b.y + one)),
            };
            let _ = writeln!(
                out,
                r#"<line class="visibility" x1="{}" y1="{}" x2="{}" y2="{}" stroke="gray" stroke-dasharray="4 3"/>"#,
                num(x1),
                num(y1),
                num(x2),
                num(y2)
            );
        }
    }
    for c in &crossings {
        let _ = writeln!(
            out,
            r#"<circle class="crossing" cx="{}" cy="{}" r="{}" fill="red"/>"#,
            num(px(c.at.0)),
            num(py(c.at.1)),
            num(s / 8.0)
        );
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}
