mod common;

use common::{config, convex_polygon, interior_point, unit};
use polywidth::billiards::{
    lattice_membership, simulate, tessellate, unfold, Budget, Mode, TerminalClass, Trajectory,
};
use polywidth::geom::{ConvexPolygon, Feature, Isometry2, Point2, Vector2};
use proptest::prelude::*;

fn triangle() -> ConvexPolygon {
    ConvexPolygon::equilateral_triangle()
}

fn budget(bounces: usize) -> Budget {
    Budget {
        max_bounces: bounces,
        max_length: 1e6,
    }
}

fn d3(k: usize) -> Isometry2 {
    let t = triangle();
    let c = t.centroid();
    let third = std::f64::consts::TAU / 3.0;
    if k < 3 {
        Isometry2::rotation(c, k as f64 * third)
    } else {
        Isometry2::reflection(c, t.vertex(k - 3) - c)
    }
}

/// Start state of a closed orbit of the triangle, before a symmetry is applied.
fn symmetric_start(kind: usize, f: f64) -> (Point2, Vector2, Mode) {
    let t = triangle();
    let [a, b, c] = [t.vertex(0), t.vertex(1), t.vertex(2)];
    let (mab, mbc) = (t.edge(0).midpoint(), t.edge(1).midpoint());
    match kind {
        0 => (mab, c - mab, Mode::Plain),
        1 => (mab, c - mab, Mode::TBilliard),
        2 => (a, mbc - a, Mode::Plain),
        3 => (mab, mbc - mab, Mode::Plain),
        4 => (mab.lerp(mbc, f), mbc - mab, Mode::Plain),
        5 => (mab.lerp(c, f), c - mab, Mode::TBilliard),
        _ => (a.lerp(b, 0.05 + 0.9 * f), c - a, Mode::Plain),
    }
}

fn specular_ok(poly: &ConvexPolygon, tr: &Trajectory) -> bool {
    tr.bounces.iter().all(|bn| match bn.feature {
        Feature::Edge(i) => {
            let n = poly.outward_normal(i);
            let t = n.perp();
            (bn.dir_out.dot(t) - bn.dir_in.dot(t)).abs() <= 1e-12
                && (bn.dir_out.dot(n) + bn.dir_in.dot(n)).abs() <= 1e-12
        }
        Feature::Vertex(_) => true,
    })
}

fn chained(tr: &Trajectory) -> bool {
    tr.segments.windows(2).all(|w| w[0].b == w[1].a)
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn bounces_are_specular(
        poly in convex_polygon(),
        w in prop::collection::vec(0.0f64..1.0, 9),
        angle in 0.0f64..std::f64::consts::TAU,
    ) {
        let tr = simulate(&poly, interior_point(&poly, &w), unit(angle), Mode::Plain, budget(300))
            .unwrap();
        prop_assert!(chained(&tr));
        prop_assert!(specular_ok(&poly, &tr));
        let u = unfold(&tr, &poly);
        let len = tr.length();
        prop_assert!((u.length - len).abs() <= 1e-12 * (1.0 + len) * tr.segments.len() as f64);
    }

    #[test]
    fn triangle_paths_unfold_straight(
        w in prop::collection::vec(0.0f64..1.0, 3),
        angle in 0.0f64..std::f64::consts::TAU,
        t_mode in any::<bool>(),
    ) {
        let t = triangle();
        let mode = if t_mode { Mode::TBilliard } else { Mode::Plain };
        let tr = simulate(&t, interior_point(&t, &w), unit(angle), mode, budget(500)).unwrap();
        prop_assert!(chained(&tr));
        prop_assert!(specular_ok(&t, &tr));
        let u = unfold(&tr, &t);
        prop_assert!(u.residual <= 1e-9, "residual {}", u.residual);
        let len = tr.length();
        prop_assert!((u.length - len).abs() <= 1e-12 * (1.0 + len) * tr.segments.len() as f64);
    }

    #[test]
    fn closed_orbits_are_quantized(kind in 0usize..7, f in 0.05f64..0.95, g in 0usize..6) {
        let t = triangle();
        let (p, d, mode) = symmetric_start(kind, f);
        let sym = d3(g);
        let tr = simulate(&t, sym.apply(p), sym.linear(d), mode, Budget::for_polygon(&t)).unwrap();
        let closed = matches!(
            tr.terminal,
            TerminalClass::Periodic { .. }
                | TerminalClass::OrthogonalChord { .. }
                | TerminalClass::VertexTerminated { closing: true, .. }
        );
        prop_assert!(closed, "{:?}", tr.terminal);
        let fit = lattice_membership(&tr).unwrap();
        prop_assert!(fit.residual <= 1e-6, "{fit:?}");
    }
}

#[test]
fn group_elements_invert() {
    for e in tessellate(&triangle(), 7).unwrap() {
        let id = e.isometry.compose(&e.isometry.inverse());
        assert!(id.distance_to_identity() <= 1e-12);
        assert!((e.isometry.determinant().abs() - 1.0).abs() <= 1e-12);
    }
}
