//! Planar and spatial primitives: points, lines, convex polygons,
//! tetrahedra, and the predicates the rest of the crate builds on.

mod input;
mod line;
mod polygon;
mod solid;
mod vec;

use thiserror::Error;

pub use input::{eval_expr, parse_polygon, parse_tetrahedron, InputError};
pub use line::{reflect_direction, reflect_point, Line2, Segment2};
pub use polygon::{
    interior_angle, polygon_chord, ray_polygon_exit, signed_area, BoundaryHit, Chord,
    ConvexPolygon, Feature,
};
pub use solid::{plane_tetrahedron_section, Plane3, TetSection, Tetrahedron, TET_EDGES};
pub use vec::{Isometry2, Point2, Point3, Vec2, Vec3, Vector2};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertices {0} and {1} coincide")]
    RepeatedVertex(usize, usize),
    #[error("vertex {0} is collinear with its neighbours")]
    CollinearVertex(usize),
    #[error("polygon is not convex at vertex {0}")]
    NonConvex(usize),
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("line coefficients (a, b) are both zero")]
    DegenerateLine,
    #[error("plane normal is zero")]
    DegeneratePlane,
    #[error("tetrahedron has zero volume")]
    DegenerateTetrahedron,
    #[error("direction vector is zero")]
    ZeroDirection,
    #[error("ray leaves the polygon immediately")]
    RayLeavesImmediately,
}
