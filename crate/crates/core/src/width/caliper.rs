use serde::{Deserialize, Serialize};

use crate::geom::{ConvexPolygon, Vec2, Vector2};

/// Minimal slab width of a convex polygon and the unit direction realizing it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WidthResult {
    pub value: f64,
    /// Unit normal of the narrowest slab, canonicalized to angle in `[0, π)`.
    pub direction: Vector2,
}

/// Geometric width by rotating calipers.
///
/// The narrowest slab of a convex polygon always has one side flush with an
/// edge, so only edge normals are candidates; the antipodal vertex of each
/// edge is tracked with a single pointer that moves monotonically around the
/// polygon. Ties (within 1e-12) go to the direction with the smallest angle.
pub fn geometric_width(poly: &ConvexPolygon) -> WidthResult {
    let n = poly.len();
    let depth = |edge: usize, v: usize| -> f64 {
        -poly
            .outward_normal(edge)
            .dot(poly.vertex(v) - poly.vertex(edge))
    };
    let mut j = (0..n)
        .max_by(|&a, &b| depth(0, a).total_cmp(&depth(0, b)))
        .expect("polygon has vertices");
    let mut best: Option<WidthResult> = None;
    for i in 0..n {
        while depth(i, (j + 1) % n) >= depth(i, j) && (j + 1) % n != i {
            j = (j + 1) % n;
        }
        let value = depth(i, j);
        let direction = canonical_direction(-poly.outward_normal(i));
        let cand = WidthResult { value, direction };
        best = Some(match best {
            None => cand,
            Some(b) if value < b.value - 1e-12 => cand,
            Some(b) if value <= b.value + 1e-12 && angle(direction) < angle(b.direction) => {
                WidthResult {
                    value: value.min(b.value),
                    direction,
                }
            }
            Some(b) => b,
        });
    }
    best.expect("polygon has edges")
}

/// Representative of `±v` with angle in `[0, π)`.
pub fn canonical_direction(v: Vector2) -> Vector2 {
    if v.y.abs() <= 1e-15 {
        return Vec2::new(v.x.abs(), 0.0);
    }
    if v.y < 0.0 {
        -v
    } else {
        v
    }
}

fn angle(v: Vector2) -> f64 {
    v.y.atan2(v.x)
}
