use serde::{Deserialize, Serialize};

use super::vec::{Point3, Vec3};
use super::GeomError;
use crate::tol;

/// A plane `{a·x + b·y + c·z + d = 0}` stored as a unit coefficient vector with
/// first nonzero entry positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Plane3 {
    coeffs: [f64; 4],
}

impl Plane3 {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self, GeomError> {
        let v = [a, b, c, d];
        if v.iter().any(|x| !x.is_finite()) {
            return Err(GeomError::NonFinite);
        }
        if a == 0.0 && b == 0.0 && c == 0.0 {
            return Err(GeomError::DegeneratePlane);
        }
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let first = v.iter().find(|x| **x != 0.0).copied().unwrap_or(1.0);
        let s = first.signum() / n;
        Ok(Self {
            coeffs: v.map(|x| x * s),
        })
    }

    /// Plane through `p` with normal `n`.
    pub fn from_point_normal(p: Point3, n: Vec3) -> Result<Self, GeomError> {
        Self::new(n.x, n.y, n.z, -n.dot(p))
    }

    pub fn coefficients(&self) -> [f64; 4] {
        self.coeffs
    }

    pub fn normal(&self) -> Vec3 {
        Vec3::new(self.coeffs[0], self.coeffs[1], self.coeffs[2])
    }

    /// Euclidean signed distance.
    pub fn signed_distance(&self, p: Point3) -> f64 {
        let n = self.normal();
        (n.dot(p) + self.coeffs[3]) / n.norm()
    }
}

/// A non-degenerate tetrahedron.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tetrahedron {
    vertices: [Point3; 4],
}

/// Vertex index pairs of the six edges.
pub const TET_EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

impl Tetrahedron {
    pub fn new(vertices: [Point3; 4]) -> Result<Self, GeomError> {
        if vertices
            .iter()
            .any(|v| !(v.x.is_finite() && v.y.is_finite() && v.z.is_finite()))
        {
            return Err(GeomError::NonFinite);
        }
        let t = Self { vertices };
        let scale = t.max_edge().max(1e-300);
        if t.signed_volume().abs() <= 1e-12 * scale.powi(3) {
            return Err(GeomError::DegenerateTetrahedron);
        }
        Ok(t)
    }

    /// Regular tetrahedron of side `side`, centred at the origin, with vertices
    /// proportional to `(1,1,1), (1,−1,−1), (−1,1,−1), (−1,−1,1)`.
    pub fn regular(side: f64) -> Result<Self, GeomError> {
        let s = side / (2.0 * 2f64.sqrt());
        Self::new([
            Vec3::new(s, s, s),
            Vec3::new(s, -s, -s),
            Vec3::new(-s, s, -s),
            Vec3::new(-s, -s, s),
        ])
    }

    pub fn vertices(&self) -> &[Point3; 4] {
        &self.vertices
    }

    pub fn signed_volume(&self) -> f64 {
        let [a, b, c, d] = self.vertices;
        (b - a).dot((c - a).cross(d - a)) / 6.0
    }

    pub fn max_edge(&self) -> f64 {
        TET_EDGES
            .iter()
            .map(|&(i, j)| self.vertices[i].dist(self.vertices[j]))
            .fold(0.0, f64::max)
    }

    /// Largest distance of `p` outside any face plane (negative inside).
    pub fn outside_distance(&self, p: Point3) -> f64 {
        (0..4)
            .map(|k| {
                let (plane, opposite) = self.face_plane(k);
                // orient so the opposite vertex is on the negative side
                let s = if plane.signed_distance(opposite) > 0.0 {
                    -1.0
                } else {
                    1.0
                };
                s * plane.signed_distance(p)
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Plane whose affine function `a·x + b·y + c·z + d` takes the value `h[i]`
    /// at vertex `i`.
    pub fn plane_with_vertex_values(&self, h: [f64; 4]) -> Result<Plane3, GeomError> {
        let mut m: [[f64; 5]; 4] = std::array::from_fn(|i| {
            let v = self.vertices[i];
            [v.x, v.y, v.z, 1.0, h[i]]
        });
        for col in 0..4 {
            let piv = (col..4)
                .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
                .unwrap_or(col);
            m.swap(col, piv);
            let pivot = m[col];
            for (row, r) in m.iter_mut().enumerate() {
                if row != col {
                    let f = r[col] / pivot[col];
                    for (x, p) in r.iter_mut().zip(pivot).skip(col) {
                        *x -= f * p;
                    }
                }
            }
        }
        let x: [f64; 4] = std::array::from_fn(|i| m[i][4] / m[i][i]);
        Plane3::new(x[0], x[1], x[2], x[3])
    }

    /// Plane of the face opposite vertex `k`, together with vertex `k`.
    pub fn face_plane(&self, k: usize) -> (Plane3, Point3) {
        let idx: Vec<usize> = (0..4).filter(|&i| i != k).collect();
        let [a, b, c] = [idx[0], idx[1], idx[2]].map(|i| self.vertices[i]);
        let n = (b - a).cross(c - a);
        (
            Plane3::from_point_normal(a, n).expect("non-degenerate face"),
            self.vertices[k],
        )
    }
}

/// The intersection of a plane with a tetrahedron.
#[derive(Debug, Clone, PartialEq)]
pub enum TetSection {
    Empty,
    Point(Point3),
    Segment(Point3, Point3),
    /// Convex polygon with cyclically ordered vertices (3 or 4 of them).
    Polygon(Vec<Point3>),
    /// The plane contains the face opposite vertex `opposite`.
    ContainsFace {
        opposite: usize,
        vertices: Vec<Point3>,
    },
}

impl TetSection {
    /// Perimeter of the section as a closed convex curve. A segment section is
    /// traversed in both directions (the limit of nearby thin sections).
    pub fn perimeter(&self) -> f64 {
        match self {
            TetSection::Empty | TetSection::Point(_) => 0.0,
            TetSection::Segment(a, b) => 2.0 * a.dist(*b),
            TetSection::Polygon(v) | TetSection::ContainsFace { vertices: v, .. } => {
                let n = v.len();
                (0..n).map(|i| v[i].dist(v[(i + 1) % n])).sum()
            }
        }
    }

    pub fn vertices(&self) -> Vec<Point3> {
        match self {
            TetSection::Empty => vec![],
            TetSection::Point(p) => vec![*p],
            TetSection::Segment(a, b) => vec![*a, *b],
            TetSection::Polygon(v) | TetSection::ContainsFace { vertices: v, .. } => v.clone(),
        }
    }
}

/// Cross-section `Π ∩ Q`, with degenerate cases reported separately.
pub fn plane_tetrahedron_section(q: &Tetrahedron, plane: &Plane3) -> TetSection {
    let verts = q.vertices();
    let s: [f64; 4] = verts.map(|p| {
        let d = plane.signed_distance(p);
        if d.abs() <= tol::ON_LINE {
            0.0
        } else {
            d
        }
    });
    if s.iter().all(|&d| d > 0.0) || s.iter().all(|&d| d < 0.0) {
        return TetSection::Empty;
    }
    let on: Vec<usize> = (0..4).filter(|&i| s[i] == 0.0).collect();
    if on.len() >= 3 {
        let opposite = (0..4).find(|i| !on.contains(i)).unwrap_or(0);
        let face: Vec<Point3> = on.iter().map(|&i| verts[i]).collect();
        return TetSection::ContainsFace {
            opposite,
            vertices: order_cyclic(face, plane),
        };
    }
    let mut pts: Vec<Point3> = on.iter().map(|&i| verts[i]).collect();
    for &(i, j) in &TET_EDGES {
        if s[i] * s[j] < 0.0 {
            let t = s[i] / (s[i] - s[j]);
            pts.push(verts[i].lerp(verts[j], t));
        }
    }
    match pts.len() {
        0 => TetSection::Empty,
        1 => TetSection::Point(pts[0]),
        2 => TetSection::Segment(pts[0], pts[1]),
        _ => TetSection::Polygon(order_cyclic(pts, plane)),
    }
}

/// Sort coplanar points by angle about their centroid.
fn order_cyclic(pts: Vec<Point3>, plane: &Plane3) -> Vec<Point3> {
    let n = plane.normal().normalized().expect("plane normal");
    let helper = if n.x.abs() < 0.9 {
        Vec3::new(1.0, 0.0, 0.0)
    } else {
        Vec3::new(0.0, 1.0, 0.0)
    };
    let e1 = n.cross(helper).normalized().expect("basis");
    let e2 = n.cross(e1);
    let k = pts.len() as f64;
    let c = pts.iter().fold(Vec3::default(), |acc, &p| acc + p) * (1.0 / k);
    let mut keyed: Vec<(f64, Point3)> = pts
        .into_iter()
        .map(|p| {
            let d = p - c;
            (d.dot(e2).atan2(d.dot(e1)), p)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
    keyed.into_iter().map(|(_, p)| p).collect()
}
