use super::chain::{ChainMass, ChainPiece};
use super::SweepError;
use crate::geom::{polygon_chord, Chord, ConvexPolygon, Feature, Line2, Point2, Segment2};

/// The two-point map on the boundary of an equilateral triangle.
///
/// Boundary points are addressed by counterclockwise arc length from vertex
/// 0. For a point on an open edge, `l` is the line through it perpendicular
/// to that edge.
///
/// * both points on a common closed edge: the empty chain;
/// * exactly one point a vertex: `l ∩ T` at the other point;
/// * otherwise `(p₁p ∪ p₂p) ∩ T` with `p = l₁ ∩ l₂`.
///
/// When `p` lies outside `T` the last case reduces to `l₂ ∩ T` if `p` is
/// beyond the edge of `p₁` (and symmetrically), or to the two perpendicular
/// segments cut off by the third edge if `p` is beyond that edge.
#[derive(Debug, Clone)]
pub struct PhiMap {
    triangle: ConvexPolygon,
    perimeter: f64,
}

impl PhiMap {
    pub fn new(triangle: ConvexPolygon) -> Result<Self, SweepError> {
        if !triangle.is_equilateral_triangle() {
            return Err(SweepError::NotEquilateral);
        }
        let perimeter = triangle.perimeter();
        Ok(PhiMap {
            triangle,
            perimeter,
        })
    }

    pub fn triangle(&self) -> &ConvexPolygon {
        &self.triangle
    }

    pub fn perimeter(&self) -> f64 {
        self.perimeter
    }

    /// Chain for two arc-length parameters.
    pub fn chain(&self, s1: f64, s2: f64) -> ChainMass {
        let (s1, s2) = (s1.rem_euclid(self.perimeter), s2.rem_euclid(self.perimeter));
        // evaluate in a fixed order so that φ(p₁,p₂) = φ(p₂,p₁) bit for bit
        let (s1, s2) = if s1 <= s2 { (s1, s2) } else { (s2, s1) };
        let p1 = self.triangle.boundary_point(s1);
        let p2 = self.triangle.boundary_point(s2);
        self.chain_at(p1, p2)
            .expect("arc-length points lie on the boundary")
    }

    /// Chain for two points given by coordinates.
    pub fn chain_at(&self, p1: Point2, p2: Point2) -> Result<ChainMass, SweepError> {
        let t = &self.triangle;
        let f1 = t
            .boundary_feature(p1)
            .ok_or(SweepError::OffBoundary(p1.x, p1.y))?;
        let f2 = t
            .boundary_feature(p2)
            .ok_or(SweepError::OffBoundary(p2.x, p2.y))?;
        let e1 = t.incident_edges(f1);
        if t.incident_edges(f2).iter().any(|e| e1.contains(e)) {
            return Ok(ChainMass::empty());
        }
        match (f1, f2) {
            (Feature::Vertex(_), Feature::Edge(e)) => Ok(self.perpendicular_chord(p2, e)),
            (Feature::Edge(e), Feature::Vertex(_)) => Ok(self.perpendicular_chord(p1, e)),
            (Feature::Edge(a), Feature::Edge(b)) => {
                let l1 = self.perpendicular(p1, a);
                let l2 = self.perpendicular(p2, b);
                let p = l1
                    .intersect(&l2)
                    .expect("perpendiculars to distinct edges of a triangle meet");
                let pieces = [Segment2::new(p1, p), Segment2::new(p2, p)]
                    .iter()
                    .filter_map(|s| t.clip_segment(s))
                    .map(ChainPiece::from)
                    .collect();
                Ok(ChainMass::from_pieces(pieces))
            }
            (Feature::Vertex(_), Feature::Vertex(_)) => {
                unreachable!("vertices of a triangle share an edge")
            }
        }
    }

    /// Mass of the chain for two arc-length parameters.
    pub fn mass(&self, s1: f64, s2: f64) -> f64 {
        self.chain(s1, s2).mass
    }

    fn perpendicular(&self, p: Point2, edge: usize) -> Line2 {
        Line2::with_direction(p, self.triangle.outward_normal(edge))
            .expect("edge normals are unit vectors")
    }

    fn perpendicular_chord(&self, p: Point2, edge: usize) -> ChainMass {
        match polygon_chord(&self.triangle, &self.perpendicular(p, edge)) {
            Chord::Segment(s) => ChainMass::from_pieces(vec![s.into()]),
            _ => ChainMass::empty(),
        }
    }
}

/// Mass of `φ(p₁, p₂)` on an equilateral triangle, with points given by
/// arc length.
pub fn phi_mass(t: &ConvexPolygon, s1: f64, s2: f64) -> Result<ChainMass, SweepError> {
    Ok(PhiMap::new(t.clone())?.chain(s1, s2))
}

/// `Φ(x) + Φ(y)` as a mod-2 chain, each argument a pair of arc lengths.
pub fn pair_phi_mass(phi: &PhiMap, x: [f64; 2], y: [f64; 2]) -> ChainMass {
    phi.chain(x[0], x[1]).mod2_sum(&phi.chain(y[0], y[1]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> PhiMap {
        PhiMap::new(ConvexPolygon::equilateral_triangle()).unwrap()
    }

    const R3: f64 = 1.732_050_807_568_877_2;

    #[test]
    fn vertex_to_opposite_midpoint() {
        let phi = t();
        // A at 0, midpoint of BC at 1.5·√3
        assert!((phi.mass(0.0, 1.5 * R3) - 1.5).abs() < 1e-12);
        assert!((phi.mass(1.5 * R3, 0.0) - 1.5).abs() < 1e-12);
    }

    #[test]
    fn same_edge_is_empty() {
        let phi = t();
        assert_eq!(phi.mass(0.2, 1.1), 0.0);
        assert_eq!(phi.mass(0.0, R3), 0.0);
        assert_eq!(phi.mass(R3, 2.0 * R3), 0.0);
        assert_eq!(phi.mass(0.3, 0.3), 0.0);
    }

    #[test]
    fn two_midpoints() {
        let phi = t();
        let m = phi.chain(0.5 * R3, 1.5 * R3);
        assert!((m.mass - 1.0).abs() < 1e-12);
        assert_eq!(m.pieces.len(), 2);
    }

    #[test]
    fn outside_intersection_beyond_own_edge() {
        let phi = t();
        // p₂ near B on BC: l₁ ∩ l₂ lies below AB, beyond the edge of p₁
        let (s1, s2) = (0.3, R3 + 0.1);
        let c = phi.chain(s1, s2);
        let p2 = phi.triangle().boundary_point(s2);
        let l2 = Line2::with_direction(p2, phi.triangle().outward_normal(1)).unwrap();
        let expected = polygon_chord(phi.triangle(), &l2).interior_length();
        assert!((c.mass - expected).abs() < 1e-12);
    }

    #[test]
    fn outside_intersection_beyond_third_edge() {
        let phi = t();
        let tri = phi.triangle();
        // p₁ near A on AB, p₂ near C on BC: l₁ ∩ l₂ lies beyond CA
        let (s1, s2) = (0.1, 1.9 * R3);
        let (p1, p2) = (tri.boundary_point(s1), tri.boundary_point(s2));
        let ca = tri.edge_line(2);
        let l1 = Line2::with_direction(p1, tri.outward_normal(0)).unwrap();
        let l2 = Line2::with_direction(p2, tri.outward_normal(1)).unwrap();
        let r1 = l1.intersect(&ca).unwrap();
        let r2 = l2.intersect(&ca).unwrap();
        let expected = p1.dist(r1) + p2.dist(r2);
        assert!((phi.mass(s1, s2) - expected).abs() < 1e-12);
        assert!(expected <= 1.5);
    }

    #[test]
    fn off_boundary_is_rejected() {
        let phi = t();
        let centre = phi.triangle().centroid();
        assert!(matches!(
            phi.chain_at(centre, Point2::new(0.0, 0.0)),
            Err(SweepError::OffBoundary(..))
        ));
    }

    #[test]
    fn pair_examples() {
        let phi = t();
        let x = [0.0, 1.5 * R3];
        // B at √3, midpoint of CA at 2.5·√3
        let y = [R3, 2.5 * R3];
        assert!((pair_phi_mass(&phi, x, y).mass - 3.0).abs() < 1e-12);
        assert_eq!(pair_phi_mass(&phi, x, x).mass, 0.0);
        assert!((pair_phi_mass(&phi, x, [0.1, 0.2]).mass - 1.5).abs() < 1e-12);
    }
}
