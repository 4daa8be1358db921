use serde::{Deserialize, Serialize};

use super::simulate::ell_v;
use super::{BilliardError, TerminalClass, Trajectory};
use crate::geom::{ConvexPolygon, Feature, Isometry2, Point2};
use crate::tol;
use crate::width::{nearest_length, LatticeKind};

/// A billiard path straightened by reflecting through the bounce lines.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Unfolding {
    pub points: Vec<Point2>,
    /// Largest distance of a breakpoint from the line through the end points.
    pub residual: f64,
    pub length: f64,
}

fn bounce_reflection(base: &ConvexPolygon, f: Feature) -> Isometry2 {
    match f {
        Feature::Edge(i) => {
            let e = base.edge(i);
            Isometry2::reflection(e.a, e.direction())
        }
        Feature::Vertex(v) => {
            let l = ell_v(base, v);
            Isometry2::reflection(base.vertex(v), l.direction())
        }
    }
}

/// Reflect each segment across the bounce line of the previous bounce, so a
/// specular path becomes a straight one.
pub fn unfold(traj: &Trajectory, base: &ConvexPolygon) -> Unfolding {
    let Some(first) = traj.segments.first() else {
        return Unfolding {
            points: Vec::new(),
            residual: 0.0,
            length: 0.0,
        };
    };
    let mut g = Isometry2::IDENTITY;
    let mut points = vec![first.a];
    for (k, seg) in traj.segments.iter().enumerate() {
        if k > 0 {
            g = g.compose(&bounce_reflection(base, traj.bounces[k - 1].feature));
        }
        points.push(g.apply(seg.b));
    }
    let length = points.windows(2).map(|w| w[0].dist(w[1])).sum();
    let (p, q) = (points[0], points[points.len() - 1]);
    let chord = q - p;
    let residual = match chord.normalized() {
        Some(u) => points
            .iter()
            .map(|x| (*x - p).cross(u).abs())
            .fold(0.0, f64::max),
        None => points.iter().map(|x| x.dist(p)).fold(0.0, f64::max),
    };
    Unfolding {
        points,
        residual,
        length,
    }
}

/// An element of the reflection group of the triangle tessellation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TessellationElement {
    pub isometry: Isometry2,
    /// Word length in the edge reflections.
    pub depth: usize,
}

/// All group elements of word length at most `depth`, shortest words first.
///
/// Two words are the same element when they move the base vertices to the
/// same points within [`tol::GROUP_DEDUP`].
pub fn tessellate(
    tri: &ConvexPolygon,
    depth: usize,
) -> Result<Vec<TessellationElement>, BilliardError> {
    if !tri.is_equilateral_triangle() {
        return Err(BilliardError::NotEquilateral);
    }
    let gens: Vec<Isometry2> = (0..3)
        .map(|i| bounce_reflection(tri, Feature::Edge(i)))
        .collect();
    let image = |g: &Isometry2| -> [Point2; 3] { [0, 1, 2].map(|i| g.apply(tri.vertex(i))) };
    let mut out = vec![TessellationElement {
        isometry: Isometry2::IDENTITY,
        depth: 0,
    }];
    let mut seen = vec![image(&Isometry2::IDENTITY)];
    let mut frontier = 0..1;
    for d in 1..=depth {
        let start = out.len();
        for k in frontier.clone() {
            for r in &gens {
                let g = out[k].isometry.compose(r);
                let im = image(&g);
                let dup = seen.iter().any(|s| {
                    s.iter()
                        .zip(&im)
                        .all(|(a, b)| a.dist(*b) <= tol::GROUP_DEDUP)
                });
                if !dup {
                    seen.push(im);
                    out.push(TessellationElement {
                        isometry: g,
                        depth: d,
                    });
                }
            }
        }
        frontier = start..out.len();
    }
    Ok(out)
}

/// Nearest triangle-lattice length `(3/2)·√(a² + ab + b²)` to a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatticeFit {
    pub a: i64,
    pub b: i64,
    pub length: f64,
    pub residual: f64,
}

impl LatticeFit {
    pub fn for_length(length: f64) -> Self {
        let v = nearest_length(LatticeKind::Triangle, length);
        LatticeFit {
            a: v.a,
            b: v.b,
            length,
            residual: (length - v.value).abs(),
        }
    }
}

/// Lattice fit of a closed trajectory in the triangle inscribed in the unit
/// circle; `None` unless the trajectory is periodic, an orthogonal chord, or
/// a vertex-terminated path with orthogonal ends.
pub fn lattice_membership(traj: &Trajectory) -> Option<LatticeFit> {
    match traj.terminal {
        TerminalClass::Periodic { .. }
        | TerminalClass::OrthogonalChord { .. }
        | TerminalClass::VertexTerminated { closing: true, .. } => {
            Some(LatticeFit::for_length(traj.length()))
        }
        _ => None,
    }
}
