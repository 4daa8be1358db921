use serde::{Deserialize, Serialize};

use super::{BilliardError, Bounce, Mode, TerminalClass, Trajectory, Truncation};
use crate::geom::{
    ray_polygon_exit, reflect_direction, ConvexPolygon, Feature, GeomError, Line2, Point2,
    Segment2, Vector2,
};
use crate::tol;

/// Outcome of a single boundary interaction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Reflection {
    Continue(Vector2),
    Stop,
}

/// Simulation limits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Budget {
    pub max_bounces: usize,
    pub max_length: f64,
}

impl Budget {
    /// `10⁴` bounces and `10³ · diam(P)` length.
    pub fn for_polygon(poly: &ConvexPolygon) -> Self {
        Budget {
            max_bounces: 10_000,
            max_length: 1e3 * poly.diameter(),
        }
    }
}

/// The line through vertex `v` of a triangle parallel to the opposite side.
pub fn ell_v(tri: &ConvexPolygon, v: usize) -> Line2 {
    let opposite = tri.edge((v + 1) % 3);
    Line2::with_direction(tri.vertex(v), opposite.direction()).expect("nondegenerate side")
}

/// Reflect a direction arriving at `hit`.
///
/// Edge hits reflect across the edge. Vertex hits stop in plain mode and
/// reflect across [`ell_v`] in T-billiard mode.
pub fn step_reflect(
    poly: &ConvexPolygon,
    hit: Point2,
    feature: Feature,
    dir_in: Vector2,
    mode: Mode,
) -> Result<Reflection, BilliardError> {
    if mode == Mode::TBilliard && !poly.is_equilateral_triangle() {
        return Err(BilliardError::NotEquilateral);
    }
    if poly.boundary_feature(hit).is_none() {
        return Err(BilliardError::OffBoundary(hit.x, hit.y));
    }
    match feature {
        Feature::Edge(i) => {
            let n = poly.outward_normal(i);
            let dn = dir_in.dot(n);
            if dn <= 0.0 {
                return Err(BilliardError::NotArriving);
            }
            Ok(Reflection::Continue(dir_in - n * (2.0 * dn)))
        }
        Feature::Vertex(_) if mode == Mode::Plain => Ok(Reflection::Stop),
        Feature::Vertex(v) => {
            let out = poly.vertex(v) - poly.edge((v + 1) % 3).midpoint();
            if dir_in.dot(out) <= 0.0 {
                return Err(BilliardError::NotArriving);
            }
            Ok(Reflection::Continue(reflect_direction(
                dir_in,
                ell_v(poly, v).direction(),
            )))
        }
    }
}

/// Deviation from π/2 of the angle between `d` and a line with direction `axis`.
fn orthogonal_dev(d: Vector2, axis: Vector2) -> f64 {
    let u = axis.normalized().expect("nonzero axis");
    let d = d.normalized().expect("nonzero direction");
    d.dot(u).abs().min(1.0).asin()
}

/// Boundary direction at a feature for the orthogonality test, if defined.
fn feature_axis(poly: &ConvexPolygon, f: Feature) -> Option<Vector2> {
    match f {
        Feature::Edge(i) => Some(poly.edge(i).direction()),
        Feature::Vertex(v) if poly.is_equilateral_triangle() => Some(ell_v(poly, v).direction()),
        Feature::Vertex(_) => None,
    }
}

/// Trace a billiard from `start` in direction `dir`.
///
/// Stops at a vertex (plain mode), on return to the start state within
/// [`tol::CLOSE`], at an orthogonal hit when the start was orthogonal to the
/// boundary within [`tol::ANGLE`], or when a budget runs out.
pub fn simulate(
    poly: &ConvexPolygon,
    start: Point2,
    dir: Vector2,
    mode: Mode,
    budget: Budget,
) -> Result<Trajectory, BilliardError> {
    let d0 = dir.normalized().ok_or(GeomError::ZeroDirection)?;
    if mode == Mode::TBilliard && !poly.is_equilateral_triangle() {
        return Err(BilliardError::NotEquilateral);
    }
    if !start.is_finite() {
        return Err(GeomError::NonFinite.into());
    }
    if !poly.contains(start, tol::VERTEX_SNAP) {
        return Err(BilliardError::StartOutside(start.x, start.y));
    }
    let start_feature = poly.boundary_feature(start);
    let start = match start_feature {
        Some(Feature::Vertex(v)) => poly.vertex(v),
        _ => start,
    };
    let start_orthogonal = start_feature
        .and_then(|f| feature_axis(poly, f))
        .is_some_and(|axis| orthogonal_dev(d0, axis) <= tol::ANGLE);
    let start_dev = start_feature
        .and_then(|f| feature_axis(poly, f))
        .map_or(f64::NAN, |axis| orthogonal_dev(d0, axis));

    let mut segments = Vec::new();
    let mut bounces: Vec<Bounce> = Vec::new();
    let mut pos = start;
    let mut d = d0;
    let mut length = 0.0;
    let terminal = loop {
        if bounces.len() >= budget.max_bounces {
            break TerminalClass::Truncated {
                reason: Truncation::BounceBudget,
            };
        }
        let hit = ray_polygon_exit(poly, pos, d)?;
        if !bounces.is_empty() && start_feature.is_none() {
            let rel = start - pos;
            let along = rel.dot(d);
            let off = rel.cross(d).abs();
            let turn = (d - d0).norm();
            if along > tol::CLOSE
                && along <= hit.distance
                && off <= tol::CLOSE
                && turn <= tol::CLOSE
            {
                segments.push(Segment2::new(pos, start));
                break TerminalClass::Periodic {
                    residual: off.max(turn),
                };
            }
        }
        if length + hit.distance > budget.max_length {
            let rest = (budget.max_length - length).max(0.0);
            segments.push(Segment2::new(pos, pos + d * rest));
            break TerminalClass::Truncated {
                reason: Truncation::LengthBudget,
            };
        }
        segments.push(Segment2::new(pos, hit.point));
        length += hit.distance;

        match hit.feature {
            Feature::Edge(i) => {
                if d.dot(poly.outward_normal(i)).abs() <= tol::TANGENTIAL {
                    break TerminalClass::Truncated {
                        reason: Truncation::Tangential,
                    };
                }
                let end_dev = orthogonal_dev(d, poly.edge(i).direction());
                if start_orthogonal && end_dev <= tol::ANGLE {
                    break TerminalClass::OrthogonalChord { start_dev, end_dev };
                }
            }
            Feature::Vertex(v) if mode == Mode::Plain => {
                let closing = start_orthogonal
                    && feature_axis(poly, hit.feature)
                        .is_some_and(|axis| orthogonal_dev(d, axis) <= tol::ANGLE);
                break TerminalClass::VertexTerminated { vertex: v, closing };
            }
            Feature::Vertex(_) => {}
        }
        let out = match step_reflect(poly, hit.point, hit.feature, d, mode)? {
            Reflection::Continue(out) => out.normalized().ok_or(GeomError::ZeroDirection)?,
            Reflection::Stop => unreachable!("plain vertex hits end above"),
        };
        bounces.push(Bounce {
            point: hit.point,
            feature: hit.feature,
            dir_in: d,
            dir_out: out,
        });
        if start_feature.is_some() {
            let gap = hit.point.dist(start);
            let turn = (out - d0).norm();
            if gap <= tol::CLOSE && turn <= tol::CLOSE {
                break TerminalClass::Periodic {
                    residual: gap.max(turn),
                };
            }
        }
        pos = hit.point;
        d = out;
    };
    Ok(Trajectory {
        mode,
        segments,
        bounces,
        terminal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Vec2;

    fn tri() -> ConvexPolygon {
        ConvexPolygon::equilateral_triangle()
    }

    fn close(a: Vector2, b: Vector2) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn edge_reflection_flips_normal_component() {
        let s = ConvexPolygon::axis_rectangle(0.0, 1.0, 0.0, 1.0).unwrap();
        let r = 0.5f64.sqrt();
        let out = step_reflect(
            &s,
            Vec2::new(0.5, 0.0),
            Feature::Edge(0),
            Vec2::new(r, -r),
            Mode::Plain,
        )
        .unwrap();
        assert_eq!(out, Reflection::Continue(Vec2::new(r, r)));
    }

    #[test]
    fn vertex_rules() {
        let t = tri();
        let c = t.vertex(2);
        let up = Vec2::new(0.0, 1.0);
        assert_eq!(
            step_reflect(&t, c, Feature::Vertex(2), up, Mode::Plain).unwrap(),
            Reflection::Stop
        );
        match step_reflect(&t, c, Feature::Vertex(2), up, Mode::TBilliard).unwrap() {
            Reflection::Continue(d) => assert!(close(d, Vec2::new(0.0, -1.0))),
            Reflection::Stop => panic!("T-billiard reflects at vertices"),
        }
        let s = ConvexPolygon::unit_circle_square();
        assert_eq!(
            step_reflect(&s, s.vertex(0), Feature::Vertex(0), up, Mode::TBilliard),
            Err(BilliardError::NotEquilateral)
        );
        assert_eq!(
            step_reflect(
                &t,
                t.vertex(0) + Vec2::new(0.8, 0.0),
                Feature::Edge(0),
                up,
                Mode::Plain
            ),
            Err(BilliardError::NotArriving)
        );
        assert!(matches!(
            step_reflect(&t, t.centroid(), Feature::Edge(0), -up, Mode::Plain),
            Err(BilliardError::OffBoundary(..))
        ));
    }

    #[test]
    fn altitude_stops_at_apex() {
        let t = tri();
        let m = Vec2::new(3f64.sqrt() / 2.0, 0.0);
        let tr = simulate(
            &t,
            m,
            Vec2::new(0.0, 1.0),
            Mode::Plain,
            Budget::for_polygon(&t),
        )
        .unwrap();
        assert_eq!(tr.segments.len(), 1);
        assert!((tr.length() - 1.5).abs() < 1e-12);
        assert_eq!(
            tr.terminal,
            TerminalClass::VertexTerminated {
                vertex: 2,
                closing: true
            }
        );
    }

    #[test]
    fn fagnano_is_periodic() {
        let t = tri();
        let mab = t.edge(0).midpoint();
        let mbc = t.edge(1).midpoint();
        let tr = simulate(&t, mab, mbc - mab, Mode::Plain, Budget::for_polygon(&t)).unwrap();
        assert_eq!(tr.bounces.len(), 3);
        assert!((tr.length() - 1.5 * 3f64.sqrt()).abs() < 1e-12);
        match tr.terminal {
            TerminalClass::Periodic { residual } => assert!(residual <= 1e-12),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn interior_start_closes_mid_segment() {
        let t = tri();
        let mab = t.edge(0).midpoint();
        let mbc = t.edge(1).midpoint();
        let start = mab.lerp(mbc, 0.3);
        let tr = simulate(&t, start, mbc - mab, Mode::Plain, Budget::for_polygon(&t)).unwrap();
        assert!(matches!(tr.terminal, TerminalClass::Periodic { .. }));
        assert!((tr.length() - 1.5 * 3f64.sqrt()).abs() < 1e-12);
        assert_eq!(tr.segments.len(), 4);
    }

    #[test]
    fn square_orthogonal_chord() {
        let s = ConvexPolygon::axis_rectangle(0.0, 1.0, 0.0, 1.0).unwrap();
        let tr = simulate(
            &s,
            Vec2::new(0.5, 0.0),
            Vec2::new(0.0, 1.0),
            Mode::Plain,
            Budget::for_polygon(&s),
        )
        .unwrap();
        assert!(matches!(tr.terminal, TerminalClass::OrthogonalChord { .. }));
        assert!((tr.length() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn double_altitude_in_t_billiard_mode() {
        let t = tri();
        let m = t.edge(0).midpoint();
        let tr = simulate(
            &t,
            m,
            Vec2::new(0.0, 1.0),
            Mode::TBilliard,
            Budget::for_polygon(&t),
        )
        .unwrap();
        assert!(matches!(tr.terminal, TerminalClass::OrthogonalChord { .. }));
        assert!((tr.length() - 3.0).abs() < 1e-12);
        assert_eq!(tr.bounces[0].feature, Feature::Vertex(2));
    }

    #[test]
    fn budgets_truncate() {
        let s = ConvexPolygon::axis_rectangle(0.0, 1.0, 0.0, 1.0).unwrap();
        let start = Vec2::new(0.1, 0.2);
        let dir = Vec2::new(1.0, 2f64.sqrt());
        let b = Budget {
            max_bounces: 7,
            max_length: 1e9,
        };
        let tr = simulate(&s, start, dir, Mode::Plain, b).unwrap();
        assert_eq!(tr.bounces.len(), 7);
        assert_eq!(
            tr.terminal,
            TerminalClass::Truncated {
                reason: Truncation::BounceBudget
            }
        );
        let b = Budget {
            max_bounces: 100,
            max_length: 2.5,
        };
        let tr = simulate(&s, start, dir, Mode::Plain, b).unwrap();
        assert!((tr.length() - 2.5).abs() < 1e-12);
        assert_eq!(
            tr.terminal,
            TerminalClass::Truncated {
                reason: Truncation::LengthBudget
            }
        );
    }

    #[test]
    fn rejects_bad_starts() {
        let t = tri();
        let b = Budget::for_polygon(&t);
        let up = Vec2::new(0.0, 1.0);
        assert!(matches!(
            simulate(&t, Vec2::new(5.0, 5.0), up, Mode::Plain, b),
            Err(BilliardError::StartOutside(..))
        ));
        assert!(matches!(
            simulate(&t, t.centroid(), Vec2::ZERO, Mode::Plain, b),
            Err(BilliardError::Geometry(GeomError::ZeroDirection))
        ));
        let s = ConvexPolygon::unit_circle_square();
        assert_eq!(
            simulate(&s, Vec2::ZERO, up, Mode::TBilliard, b),
            Err(BilliardError::NotEquilateral)
        );
    }
}
