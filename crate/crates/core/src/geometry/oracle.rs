//! Independent visibility check by discretisation.
//!
//! All coordinates are scaled by twice the lcm of their denominators. Every
//! interval endpoint is then an integer, so a strip `[t, t + 1]` is either
//! inside a blocker's span or meets it in at most a point.

use num_integer::Integer;

use super::layout::ensure_valid;
use super::{Axis, GeometryError, Layout};

pub fn visibility_oracle(layout: &Layout, i: usize, j: usize, axis: Axis) -> Result<bool, GeometryError> {
    if i == j {
        return Err(GeometryError::SameId(i));
    }
    let a = layout.index_of(i)?;
    let b = layout.index_of(j)?;
    ensure_valid(layout)?;
    let d = layout
        .squares()
        .iter()
        .fold(1i64, |acc, s| acc.lcm(s.x.denom()).lcm(s.y.denom()));
    let f = 2 * d;
    let scaled: Vec<(i64, i64)> = layout
        .squares()
        .iter()
        .map(|s| {
            let x = *(s.x * f).numer();
            let y = *(s.y * f).numer();
            match axis {
                Axis::Horizontal => (x, y),
                Axis::Vertical => (y, x),
            }
        })
        .collect();
    // Vertical: `i` is the upper square, i.e. the right one after transposing.
    let (l, r) = match axis {
        Axis::Horizontal => (a, b),
        Axis::Vertical => (b, a),
    };
    let (xl, yl) = scaled[l];
    let (xr, yr) = scaled[r];
    if xl >= xr {
        return Ok(false);
    }
    let lo = yl.max(yr);
    let hi = yl.min(yr) + f;
    for t in lo..hi {
        let blocked = scaled.iter().enumerate().any(|(k, &(xk, yk))| {
            k != l && k != r && xk >= xl && xk <= xr && yk <= t && yk + f >= t + 1
        });
        if !blocked {
            return Ok(true);
        }
    }
    Ok(false)
}
