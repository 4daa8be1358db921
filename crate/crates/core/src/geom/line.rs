use serde::{Deserialize, Serialize};

use super::vec::{Point2, Vec2, Vector2};
use super::GeomError;

/// A line segment between two points. Degenerate (`a == b`) segments are allowed
/// only where an operation documents them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment2 {
    pub a: Point2,
    pub b: Point2,
}

impl Segment2 {
    pub const fn new(a: Point2, b: Point2) -> Self {
        Self { a, b }
    }

    pub fn length(&self) -> f64 {
        self.a.dist(self.b)
    }

    pub fn midpoint(&self) -> Point2 {
        self.a.lerp(self.b, 0.5)
    }

    pub fn direction(&self) -> Vector2 {
        self.b - self.a
    }

    /// Distance from `p` to the closed segment.
    pub fn distance_to(&self, p: Point2) -> f64 {
        let d = self.b - self.a;
        let len2 = d.norm_sq();
        if len2 == 0.0 {
            return p.dist(self.a);
        }
        let t = ((p - self.a).dot(d) / len2).clamp(0.0, 1.0);
        p.dist(self.a + d * t)
    }
}

/// A line `{a·x + b·y + c = 0}`, stored as a projective representative:
/// the coefficient vector has unit length and its first nonzero entry is positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Line2 {
    a: f64,
    b: f64,
    c: f64,
}

impl Line2 {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self, GeomError> {
        if ![a, b, c].iter().all(|v| v.is_finite()) {
            return Err(GeomError::NonFinite);
        }
        if a == 0.0 && b == 0.0 {
            return Err(GeomError::DegenerateLine);
        }
        let n = (a * a + b * b + c * c).sqrt();
        let sign = if a > 0.0 || (a == 0.0 && b > 0.0) {
            1.0
        } else {
            -1.0
        };
        let s = sign / n;
        Ok(Self {
            a: a * s,
            b: b * s,
            c: c * s,
        })
    }

    /// The line through two distinct points.
    pub fn through(p: Point2, q: Point2) -> Result<Self, GeomError> {
        let d = q - p;
        if d.norm() == 0.0 {
            return Err(GeomError::DegenerateLine);
        }
        let n = d.perp();
        Self::new(n.x, n.y, -n.dot(p))
    }

    /// The line through `p` with direction `dir`.
    pub fn with_direction(p: Point2, dir: Vector2) -> Result<Self, GeomError> {
        Self::through(p, p + dir)
    }

    pub fn coefficients(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }

    /// Unit normal `(a, b)/|(a, b)|`.
    pub fn unit_normal(&self) -> Vector2 {
        let n = self.a.hypot(self.b);
        Vec2::new(self.a / n, self.b / n)
    }

    /// Unit direction; the normal turned clockwise.
    pub fn direction(&self) -> Vector2 {
        let n = self.unit_normal();
        Vec2::new(n.y, -n.x)
    }

    /// Euclidean signed distance, positive on the side the normal points to.
    pub fn signed_distance(&self, p: Point2) -> f64 {
        (self.a * p.x + self.b * p.y + self.c) / self.a.hypot(self.b)
    }

    /// Orthogonal projection of `p` onto the line.
    pub fn project(&self, p: Point2) -> Point2 {
        p - self.unit_normal() * self.signed_distance(p)
    }

    /// Intersection point of two lines, `None` if parallel.
    pub fn intersect(&self, other: &Line2) -> Option<Point2> {
        let det = self.a * other.b - self.b * other.a;
        let scale = self.a.hypot(self.b) * other.a.hypot(other.b);
        if det.abs() <= 1e-15 * scale {
            return None;
        }
        let x = (self.b * other.c - self.c * other.b) / det;
        let y = (self.c * other.a - self.a * other.c) / det;
        Some(Vec2::new(x, y))
    }
}

/// Mirror image of `p` across `l`.
pub fn reflect_point(p: Point2, l: &Line2) -> Point2 {
    p - l.unit_normal() * (2.0 * l.signed_distance(p))
}

/// Mirror image of a direction across a line with direction `axis`.
pub fn reflect_direction(d: Vector2, axis: Vector2) -> Vector2 {
    let u = axis.normalized().expect("reflection axis must be nonzero");
    u * (2.0 * d.dot(u)) - d
}
