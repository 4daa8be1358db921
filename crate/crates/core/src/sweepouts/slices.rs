use super::chain::ChainMass;
use crate::geom::{
    plane_tetrahedron_section, polygon_chord, Chord, ConvexPolygon, Line2, Plane3, TetSection,
    Tetrahedron,
};

/// Chord of a line through the polygon; a line along an edge has mass 0.
pub fn line_sweepout_mass(p: &ConvexPolygon, line: &Line2) -> ChainMass {
    match polygon_chord(p, line) {
        Chord::Segment(s) => ChainMass::from_pieces(vec![s.into()]),
        Chord::Empty | Chord::EdgeOverlap { .. } => ChainMass::empty(),
    }
}

/// Perimeter of a plane section of the tetrahedron.
///
/// `None` when the plane contains a face; such planes are not part of the
/// family being maximized.
pub fn plane_sweepout_mass(q: &Tetrahedron, plane: &Plane3) -> Option<f64> {
    match plane_tetrahedron_section(q, plane) {
        TetSection::ContainsFace { .. } => None,
        s => Some(s.perimeter()),
    }
}
