use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::line::{Line2, Segment2};
use super::vec::{Isometry2, Point2, Vec2, Vector2};
use super::GeomError;
use crate::tol;

/// A boundary feature of a polygon: the open edge `i` (from vertex `i` to
/// vertex `i + 1`) or the vertex `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Feature {
    Edge(usize),
    Vertex(usize),
}

/// First boundary point hit by a ray.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryHit {
    pub point: Point2,
    pub feature: Feature,
    /// Distance travelled along the (unit) ray direction.
    pub distance: f64,
}

/// Intersection of a line with a convex polygon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Chord {
    Empty,
    /// The line crosses the polygon; the segment may be degenerate when the
    /// line only touches a vertex.
    Segment(Segment2),
    /// The line contains the edge with the given index.
    EdgeOverlap {
        edge: usize,
        segment: Segment2,
    },
}

impl Chord {
    /// Length of the intersection, counting edge overlaps.
    pub fn length(&self) -> f64 {
        match self {
            Chord::Empty => 0.0,
            Chord::Segment(s) | Chord::EdgeOverlap { segment: s, .. } => s.length(),
        }
    }

    /// Length inside the open polygon; boundary overlaps count zero.
    pub fn interior_length(&self) -> f64 {
        match self {
            Chord::Segment(s) => s.length(),
            _ => 0.0,
        }
    }
}

/// A strictly convex polygon with counterclockwise vertices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexPolygon {
    vertices: Vec<Point2>,
}

impl ConvexPolygon {
    /// Validates and stores `vertices`. Clockwise input is reversed to
    /// counterclockwise; anything non-convex, collinear or repeated is an error.
    pub fn new(mut vertices: Vec<Point2>) -> Result<Self, GeomError> {
        let n = vertices.len();
        if n < 3 {
            return Err(GeomError::TooFewVertices(n));
        }
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(GeomError::NonFinite);
        }
        let scale = vertices
            .iter()
            .map(|v| v.x.abs().max(v.y.abs()))
            .fold(1.0_f64, f64::max);
        for i in 0..n {
            for j in i + 1..n {
                if vertices[i].dist(vertices[j]) <= 1e-12 * scale {
                    return Err(GeomError::RepeatedVertex(i, j));
                }
            }
        }
        if signed_area(&vertices) < 0.0 {
            vertices.reverse();
        }
        let mut turning = 0.0;
        for i in 0..n {
            let prev = vertices[(i + n - 1) % n];
            let cur = vertices[i];
            let next = vertices[(i + 1) % n];
            let e0 = cur - prev;
            let e1 = next - cur;
            let sin = e0.cross(e1) / (e0.norm() * e1.norm());
            if sin.abs() <= 1e-12 {
                if e0.dot(e1) > 0.0 {
                    return Err(GeomError::CollinearVertex(i));
                }
                return Err(GeomError::NonConvex(i));
            }
            if sin < 0.0 {
                return Err(GeomError::NonConvex(i));
            }
            turning += e0.cross(e1).atan2(e0.dot(e1));
        }
        if (turning - TAU).abs() > 1e-6 {
            return Err(GeomError::NonConvex(0));
        }
        Ok(Self { vertices })
    }

    /// Equilateral triangle inscribed in the unit circle with
    /// `A = (0,0)`, `B = (√3,0)`, `C = (√3/2, 3/2)`.
    pub fn equilateral_triangle() -> Self {
        let s3 = 3f64.sqrt();
        Self::new(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(s3, 0.0),
            Vec2::new(s3 / 2.0, 1.5),
        ])
        .expect("canonical triangle is convex")
    }

    /// Axis-aligned square of side √2 inscribed in the unit circle.
    pub fn unit_circle_square() -> Self {
        let r = 2f64.sqrt() / 2.0;
        Self::axis_rectangle(-r, r, -r, r).expect("canonical square is convex")
    }

    pub fn axis_rectangle(x0: f64, x1: f64, y0: f64, y1: f64) -> Result<Self, GeomError> {
        Self::new(vec![
            Vec2::new(x0, y0),
            Vec2::new(x1, y0),
            Vec2::new(x1, y1),
            Vec2::new(x0, y1),
        ])
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> Point2 {
        self.vertices[i % self.len()]
    }

    pub fn edge(&self, i: usize) -> Segment2 {
        Segment2::new(self.vertex(i), self.vertex(i + 1))
    }

    pub fn edges(&self) -> impl Iterator<Item = Segment2> + '_ {
        (0..self.len()).map(move |i| self.edge(i))
    }

    pub fn edge_line(&self, i: usize) -> Line2 {
        let e = self.edge(i);
        Line2::through(e.a, e.b).expect("polygon edges are nondegenerate")
    }

    /// Outward unit normal of edge `i`.
    pub fn outward_normal(&self, i: usize) -> Vector2 {
        let d = self.edge(i).direction();
        Vec2::new(d.y, -d.x)
            .normalized()
            .expect("nondegenerate edge")
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn perimeter(&self) -> f64 {
        self.edges().map(|e| e.length()).sum()
    }

    pub fn centroid(&self) -> Point2 {
        let n = self.len() as f64;
        let s = self.vertices.iter().fold(Vec2::ZERO, |acc, &v| acc + v);
        s * (1.0 / n)
    }

    pub fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for (i, &p) in self.vertices.iter().enumerate() {
            for &q in &self.vertices[i + 1..] {
                d = d.max(p.dist(q));
            }
        }
        d
    }

    /// Largest signed distance of `p` outside any edge line (negative inside).
    pub fn outside_distance(&self, p: Point2) -> f64 {
        (0..self.len())
            .map(|i| self.outward_normal(i).dot(p - self.vertex(i)))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn contains(&self, p: Point2, tolerance: f64) -> bool {
        self.outside_distance(p) <= tolerance
    }

    /// Extent `max x·v − min x·v` of the polygon along the unit vector `v`.
    pub fn slab_width(&self, v: Vector2) -> f64 {
        let (lo, hi) = self
            .vertices
            .iter()
            .map(|p| p.dot(v))
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), t| {
                (lo.min(t), hi.max(t))
            });
        hi - lo
    }

    /// Image under an isometry; orientation is restored for reflections.
    pub fn transformed(&self, g: &Isometry2) -> ConvexPolygon {
        let mut vertices: Vec<Point2> = self.vertices.iter().map(|&p| g.apply(p)).collect();
        if g.determinant() < 0.0 {
            vertices.reverse();
        }
        ConvexPolygon { vertices }
    }

    pub fn scaled(&self, factor: f64) -> Result<ConvexPolygon, GeomError> {
        ConvexPolygon::new(self.vertices.iter().map(|&p| p * factor).collect())
    }

    /// True when all sides have equal length and there are three of them.
    pub fn is_equilateral_triangle(&self) -> bool {
        if self.len() != 3 {
            return false;
        }
        let l: Vec<f64> = self.edges().map(|e| e.length()).collect();
        let m = l.iter().cloned().fold(0.0, f64::max);
        l.iter().all(|x| (x - m).abs() <= 1e-9 * m)
    }

    /// Point at arc-length `s` (taken modulo the perimeter) counterclockwise from vertex 0.
    pub fn boundary_point(&self, s: f64) -> Point2 {
        let (edge, t) = self.boundary_locate(s);
        let e = self.edge(edge);
        e.a.lerp(e.b, t)
    }

    /// Edge index and fraction along that edge for arc-length `s`.
    pub fn boundary_locate(&self, s: f64) -> (usize, f64) {
        let per = self.perimeter();
        let mut s = s.rem_euclid(per);
        for i in 0..self.len() {
            let len = self.edge(i).length();
            if s < len || i + 1 == self.len() {
                return (i, (s / len).clamp(0.0, 1.0));
            }
            s -= len;
        }
        unreachable!()
    }

    /// Arc-length coordinate of vertex `i`.
    pub fn vertex_arclength(&self, i: usize) -> f64 {
        (0..i % self.len()).map(|k| self.edge(k).length()).sum()
    }

    /// Classify a point on the boundary as a vertex or open-edge point, within
    /// the vertex-snap tolerance. `None` if `p` is farther than that from ∂P.
    pub fn boundary_feature(&self, p: Point2) -> Option<Feature> {
        if let Some(v) = self.nearest_vertex_within(p, tol::VERTEX_SNAP) {
            return Some(Feature::Vertex(v));
        }
        (0..self.len())
            .map(|i| (i, self.edge(i).distance_to(p)))
            .filter(|&(_, d)| d <= tol::VERTEX_SNAP)
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(i, _)| Feature::Edge(i))
    }

    fn nearest_vertex_within(&self, p: Point2, radius: f64) -> Option<usize> {
        self.vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (i, v.dist(p)))
            .filter(|&(_, d)| d <= radius)
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(i, _)| i)
    }

    /// Edges incident to a feature.
    pub fn incident_edges(&self, f: Feature) -> Vec<usize> {
        match f {
            Feature::Edge(i) => vec![i],
            Feature::Vertex(i) => vec![(i + self.len() - 1) % self.len(), i],
        }
    }

    /// Clip by the half-plane `{x : n·x ≤ c}` (Sutherland–Hodgman step).
    /// Returns the raw vertex loop, which may be empty or degenerate.
    pub fn clip_halfplane(points: &[Point2], n: Vector2, c: f64) -> Vec<Point2> {
        let mut out = Vec::with_capacity(points.len() + 1);
        let k = points.len();
        for i in 0..k {
            let p = points[i];
            let q = points[(i + 1) % k];
            let dp = n.dot(p) - c;
            let dq = n.dot(q) - c;
            if dp <= 0.0 {
                out.push(p);
            }
            if (dp < 0.0 && dq > 0.0) || (dp > 0.0 && dq < 0.0) {
                out.push(p.lerp(q, dp / (dp - dq)));
            }
        }
        out
    }

    /// Area of the intersection with another convex polygon.
    pub fn intersection_area(&self, other: &ConvexPolygon) -> f64 {
        let mut pts = self.vertices.clone();
        for i in 0..other.len() {
            if pts.is_empty() {
                break;
            }
            let n = other.outward_normal(i);
            pts = Self::clip_halfplane(&pts, n, n.dot(other.vertex(i)));
        }
        if pts.len() < 3 {
            0.0
        } else {
            signed_area(&pts).max(0.0)
        }
    }

    /// Portion of a segment inside the closed polygon, or `None`.
    pub fn clip_segment(&self, s: &Segment2) -> Option<Segment2> {
        let d = s.b - s.a;
        let (mut t0, mut t1) = (0.0_f64, 1.0_f64);
        for i in 0..self.len() {
            let n = self.outward_normal(i);
            let num = n.dot(self.vertex(i) - s.a);
            let den = n.dot(d);
            if den.abs() <= 1e-300 {
                if num < -tol::ON_LINE {
                    return None;
                }
                continue;
            }
            let t = num / den;
            if den > 0.0 {
                t1 = t1.min(t);
            } else {
                t0 = t0.max(t);
            }
            if t0 > t1 {
                return None;
            }
        }
        Some(Segment2::new(s.a + d * t0, s.a + d * t1))
    }
}

/// Shoelace signed area, positive for counterclockwise loops.
pub fn signed_area(points: &[Point2]) -> f64 {
    let n = points.len();
    (0..n)
        .map(|i| points[i].cross(points[(i + 1) % n]))
        .sum::<f64>()
        / 2.0
}

/// First boundary point strictly ahead of `origin` along `dir`.
///
/// Hits within [`tol::VERTEX_SNAP`] of a vertex are snapped onto it and
/// reported as vertex hits; edge hits are projected onto the edge line.
pub fn ray_polygon_exit(
    poly: &ConvexPolygon,
    origin: Point2,
    dir: Vector2,
) -> Result<BoundaryHit, GeomError> {
    let u = dir.normalized().ok_or(GeomError::ZeroDirection)?;
    if !origin.is_finite() {
        return Err(GeomError::NonFinite);
    }
    let mut best: Option<(usize, f64)> = None;
    for i in 0..poly.len() {
        let n = poly.outward_normal(i);
        let den = n.dot(u);
        if den <= 0.0 {
            continue;
        }
        let t = n.dot(poly.vertex(i) - origin) / den;
        if best.is_none_or(|(_, bt)| t < bt) {
            best = Some((i, t));
        }
    }
    let (edge, t) = best.ok_or(GeomError::RayLeavesImmediately)?;
    if t <= tol::ON_LINE {
        return Err(GeomError::RayLeavesImmediately);
    }
    let raw = origin + u * t;
    if let Some(v) = poly.nearest_vertex_within(raw, tol::VERTEX_SNAP) {
        let point = poly.vertex(v);
        return Ok(BoundaryHit {
            point,
            feature: Feature::Vertex(v),
            distance: point.dist(origin),
        });
    }
    let point = poly.edge_line(edge).project(raw);
    Ok(BoundaryHit {
        point,
        feature: Feature::Edge(edge),
        distance: point.dist(origin),
    })
}

/// Intersection of a line with a convex polygon.
pub fn polygon_chord(poly: &ConvexPolygon, l: &Line2) -> Chord {
    let n = poly.len();
    let s: Vec<f64> = poly
        .vertices()
        .iter()
        .map(|&p| {
            let d = l.signed_distance(p);
            if d.abs() <= tol::ON_LINE {
                0.0
            } else {
                d
            }
        })
        .collect();
    if s.iter().all(|&d| d > 0.0) || s.iter().all(|&d| d < 0.0) {
        return Chord::Empty;
    }
    for i in 0..n {
        if s[i] == 0.0 && s[(i + 1) % n] == 0.0 {
            return Chord::EdgeOverlap {
                edge: i,
                segment: poly.edge(i),
            };
        }
    }
    let mut pts: Vec<Point2> = Vec::with_capacity(2);
    for i in 0..n {
        let j = (i + 1) % n;
        if s[i] == 0.0 {
            pts.push(l.project(poly.vertex(i)));
        } else if s[i] * s[j] < 0.0 {
            let p = poly.vertex(i).lerp(poly.vertex(j), s[i] / (s[i] - s[j]));
            pts.push(l.project(p));
        }
    }
    match pts.as_slice() {
        [p] => Chord::Segment(Segment2::new(*p, *p)),
        [p, q, ..] => {
            // orient along the line direction for deterministic output
            let dir = l.direction();
            if (*q - *p).dot(dir) >= 0.0 {
                Chord::Segment(Segment2::new(*p, *q))
            } else {
                Chord::Segment(Segment2::new(*q, *p))
            }
        }
        [] => Chord::Empty,
    }
}

/// Interior angle at vertex `i`, in radians.
pub fn interior_angle(poly: &ConvexPolygon, i: usize) -> f64 {
    let n = poly.len();
    let prev = poly.vertex(i + n - 1);
    let cur = poly.vertex(i);
    let next = poly.vertex(i + 1);
    let a = prev - cur;
    let b = next - cur;
    let ang = a.cross(b).abs().atan2(a.dot(b));
    debug_assert!(ang < PI);
    ang
}
