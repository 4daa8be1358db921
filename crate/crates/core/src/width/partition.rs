use serde::{Deserialize, Serialize};

use super::caliper::geometric_width;
use super::WidthError;
use crate::geom::{ConvexPolygon, Point2};
use crate::tol;

/// One piece of a partition together with its share `p` of the total index
/// and the lower bound the piece rule assigned it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PieceBound {
    pub polygon: ConvexPolygon,
    pub p: u32,
    pub bound: f64,
}

/// Lower bound `ω_p(K) ≥ Σ ω_{p_j}(K_j)` from an interior-disjoint partition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionBound {
    pub pieces: Vec<PieceBound>,
    pub total_p: u32,
    pub bound: f64,
}

/// Default per-piece rule: `ω_{p_j}(K_j) ≥ ω_1(K_j) = W(K_j)`.
///
/// For `p_j = 1` this is an equality; for larger `p_j` it is the monotone
/// lower bound, which is all a general polygon admits.
pub fn width_rule(piece: &ConvexPolygon, _p: u32) -> f64 {
    geometric_width(piece).value
}

/// Sum per-piece lower bounds over a partition of `ambient`.
///
/// Pieces must lie inside `ambient` and have pairwise disjoint interiors;
/// both are checked with signed areas at tolerance [`tol::AREA`].
pub fn ls_lower_bound<F>(
    ambient: &ConvexPolygon,
    pieces: &[(ConvexPolygon, u32)],
    rule: F,
) -> Result<PartitionBound, WidthError>
where
    F: Fn(&ConvexPolygon, u32) -> f64,
{
    if pieces.is_empty() {
        return Err(WidthError::EmptyPartition);
    }
    let scale = ambient.diameter().max(1.0);
    for (i, (piece, p)) in pieces.iter().enumerate() {
        if *p == 0 {
            return Err(WidthError::ZeroIndex(i));
        }
        if let Some(v) = piece
            .vertices()
            .iter()
            .find(|&&v| !ambient.contains(v, tol::AREA * scale))
        {
            return Err(WidthError::NotContained {
                piece: i,
                x: v.x,
                y: v.y,
            });
        }
    }
    for i in 0..pieces.len() {
        for j in i + 1..pieces.len() {
            let area = pieces[i].0.intersection_area(&pieces[j].0);
            if area > tol::AREA {
                return Err(WidthError::Overlap { i, j, area });
            }
        }
    }
    let bounded: Vec<PieceBound> = pieces
        .iter()
        .map(|(poly, p)| PieceBound {
            polygon: poly.clone(),
            p: *p,
            bound: rule(poly, *p),
        })
        .collect();
    Ok(PartitionBound {
        total_p: bounded.iter().map(|b| b.p).sum(),
        bound: bounded.iter().map(|b| b.bound).sum(),
        pieces: bounded,
    })
}

fn mid(a: Point2, b: Point2) -> Point2 {
    a.lerp(b, 0.5)
}

/// Split a triangle along its midlines into three corner triangles and the
/// central (medial) triangle, in that order.
pub fn medial_subdivision(tri: &ConvexPolygon) -> Result<[ConvexPolygon; 4], WidthError> {
    if tri.len() != 3 {
        return Err(WidthError::WrongShape("triangle"));
    }
    let [a, b, c] = [tri.vertex(0), tri.vertex(1), tri.vertex(2)];
    let (mab, mbc, mca) = (mid(a, b), mid(b, c), mid(c, a));
    Ok([
        ConvexPolygon::new(vec![a, mab, mca])?,
        ConvexPolygon::new(vec![mab, b, mbc])?,
        ConvexPolygon::new(vec![mca, mbc, c])?,
        ConvexPolygon::new(vec![mab, mbc, mca])?,
    ])
}

/// Split a parallelogram into four half-size copies through its edge midpoints.
pub fn quadrisect(quad: &ConvexPolygon) -> Result<[ConvexPolygon; 4], WidthError> {
    if quad.len() != 4 {
        return Err(WidthError::WrongShape("quadrilateral"));
    }
    let v: Vec<Point2> = quad.vertices().to_vec();
    let m: Vec<Point2> = (0..4).map(|i| mid(v[i], v[(i + 1) % 4])).collect();
    let c = quad.centroid();
    Ok([
        ConvexPolygon::new(vec![v[0], m[0], c, m[3]])?,
        ConvexPolygon::new(vec![m[0], v[1], m[1], c])?,
        ConvexPolygon::new(vec![c, m[1], v[2], m[2]])?,
        ConvexPolygon::new(vec![m[3], c, m[2], v[3]])?,
    ])
}

/// Cut a quadrilateral along the diagonal from vertex 0 to vertex 2.
pub fn diagonal_split(quad: &ConvexPolygon) -> Result<[ConvexPolygon; 2], WidthError> {
    if quad.len() != 4 {
        return Err(WidthError::WrongShape("quadrilateral"));
    }
    let v = quad.vertices();
    Ok([
        ConvexPolygon::new(vec![v[0], v[1], v[2]])?,
        ConvexPolygon::new(vec![v[0], v[2], v[3]])?,
    ])
}
