mod common;

use common::{config, convex_polygon, interior_point, unit};
use polywidth::geom::{
    plane_tetrahedron_section, polygon_chord, ray_polygon_exit, reflect_point, Feature, Line2,
    Plane3, Tetrahedron, Vec2, Vec3,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn reflection_is_an_involution(
        px in -50.0f64..50.0, py in -50.0f64..50.0,
        a in -1.0f64..1.0, b in -1.0f64..1.0, c in -10.0f64..10.0,
    ) {
        prop_assume!(a.abs() + b.abs() > 1e-3);
        let l = Line2::new(a, b, c).unwrap();
        let p = Vec2::new(px, py);
        let back = reflect_point(reflect_point(p, &l), &l);
        prop_assert!(back.dist(p) <= 1e-12 * (1.0 + p.norm()));
    }

    #[test]
    fn exit_point_lies_on_edge_and_ray(
        poly in convex_polygon(),
        w in prop::collection::vec(0.0f64..1.0, 9),
        angle in 0.0f64..std::f64::consts::TAU,
    ) {
        let o = interior_point(&poly, &w);
        let d = unit(angle);
        let hit = ray_polygon_exit(&poly, o, d).unwrap();
        let edges = poly.incident_edges(hit.feature);
        let on_edge = edges
            .iter()
            .map(|&i| poly.edge_line(i).signed_distance(hit.point).abs())
            .fold(f64::INFINITY, f64::min);
        prop_assert!(on_edge <= 1e-12 * (1.0 + hit.point.norm()));
        let rel = hit.point - o;
        prop_assert!(rel.dot(d) >= 0.0);
        let off = rel.cross(d).abs();
        match hit.feature {
            Feature::Edge(_) => prop_assert!(off <= 1e-10 * (1.0 + rel.norm())),
            Feature::Vertex(_) => prop_assert!(off <= 1e-9 + 1e-12 * rel.norm()),
        }
    }

    #[test]
    fn chord_length_is_concave_in_offset(
        poly in convex_polygon(),
        angle in 0.0f64..std::f64::consts::PI,
        t in 0.05f64..0.95,
        h in 0.001f64..0.2,
    ) {
        let n = unit(angle);
        let (lo, hi) = poly
            .vertices()
            .iter()
            .map(|v| v.dot(n))
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| (a.min(x), b.max(x)));
        let span = hi - lo;
        let mid = lo + t * span;
        let step = h * span * t.min(1.0 - t);
        let len = |c: f64| polygon_chord(&poly, &Line2::new(n.x, n.y, -c).unwrap()).length();
        let (f0, fm, fp) = (len(mid), len(mid - step), len(mid + step));
        prop_assert!(f0 >= 0.5 * (fm + fp) - 1e-9);
    }

    #[test]
    fn section_vertices_on_plane_and_in_tetrahedron(
        side in 0.2f64..3.0,
        w in prop::collection::vec(0.0f64..1.0, 4),
        theta in 0.0f64..std::f64::consts::PI,
        phi in 0.0f64..std::f64::consts::TAU,
    ) {
        let q = Tetrahedron::regular(side).unwrap();
        let total: f64 = w.iter().sum::<f64>() + 0.2;
        let p = q
            .vertices()
            .iter()
            .zip(&w)
            .fold(Vec3::new(0.0, 0.0, 0.0), |acc, (v, wi)| acc + *v * ((wi + 0.05) / total));
        let n = Vec3::new(theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos());
        let plane = Plane3::from_point_normal(p, n).unwrap();
        for v in plane_tetrahedron_section(&q, &plane).vertices() {
            prop_assert!(plane.signed_distance(v).abs() <= 1e-12);
            prop_assert!(q.outside_distance(v) <= 1e-12);
        }
    }
}
