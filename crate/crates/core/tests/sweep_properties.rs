mod common;

use common::config;
use polywidth::geom::{ConvexPolygon, Line2, Tetrahedron};
use polywidth::sweepouts::{
    hyperbola_sweepout_mass, line_sweepout_mass, maximize_mass, plane_sweepout_mass, AxisRect,
    ChainMass, ChainPiece, Family, GridSpec, PhiMap,
};
use proptest::prelude::*;

fn phi() -> PhiMap {
    PhiMap::new(ConvexPolygon::equilateral_triangle()).unwrap()
}

fn square() -> AxisRect {
    AxisRect::from_polygon(&ConvexPolygon::unit_circle_square()).unwrap()
}

fn tet() -> Tetrahedron {
    Tetrahedron::regular(3f64.sqrt() / 2.0).unwrap()
}

/// D₃ acting on arc-length coordinates of the triangle boundary.
fn d3_param(k: usize, s: f64, per: f64) -> f64 {
    let side = per / 3.0;
    let r = (s + (k % 3) as f64 * side).rem_euclid(per);
    if k >= 3 {
        (per - r).rem_euclid(per)
    } else {
        r
    }
}

/// D₄ of the square on hyperbola coefficients `[a, b, c, d]`.
fn d4_conic(k: usize, [a, b, c, d]: [f64; 4]) -> [f64; 4] {
    let mut v = [a, b, c, d];
    if k & 1 != 0 {
        v = [v[0], v[2], v[1], v[3]];
    }
    if k & 2 != 0 {
        v = [-v[0], -v[1], v[2], v[3]];
    }
    if k & 4 != 0 {
        v = [-v[0], v[1], -v[2], v[3]];
    }
    v
}

fn chain_is_interior(chain: &ChainMass, domain: &ConvexPolygon) -> bool {
    let sum: f64 = chain.pieces.iter().map(ChainPiece::length).sum();
    (sum - chain.mass).abs() <= 1e-12
        && chain.pieces.iter().all(|p| {
            let pts = p.points();
            pts.iter().all(|&x| domain.outside_distance(x) <= 1e-9)
                && pts.windows(2).all(|w| {
                    w[0].dist(w[1]) <= 1e-9 || domain.outside_distance(w[0].lerp(w[1], 0.5)) < 0.0
                })
        })
}

proptest! {
    #![proptest_config(config(512))]

    #[test]
    fn phi_is_symmetric_and_bounded(s1 in 0.0f64..5.2, s2 in 0.0f64..5.2) {
        let m = phi();
        prop_assert_eq!(m.mass(s1, s2), m.mass(s2, s1));
        prop_assert_eq!(m.chain(s1, s2), m.chain(s2, s1));
        let c = m.chain(s1, s2);
        prop_assert!(c.mass <= 1.5 + 1e-9);
        prop_assert!(chain_is_interior(&c, m.triangle()));
    }

    #[test]
    fn phi_is_d3_equivariant(s1 in 0.0f64..5.2, s2 in 0.0f64..5.2, k in 0usize..6) {
        let m = phi();
        let per = m.perimeter();
        let moved = m.mass(d3_param(k, s1, per), d3_param(k, s2, per));
        prop_assert!((moved - m.mass(s1, s2)).abs() <= 1e-9);
    }

    #[test]
    fn pair_phi_is_symmetric(x in prop::array::uniform2(0.0f64..5.2), y in prop::array::uniform2(0.0f64..5.2), k in 0usize..6) {
        let fam = Family::pair_phi_t();
        let m = fam.mass(&[x[0], x[1], y[0], y[1]]).unwrap();
        prop_assert!(m <= 3.0 + 1e-9);
        let swapped = fam.mass(&[y[0], y[1], x[0], x[1]]).unwrap();
        prop_assert!((m - swapped).abs() <= 1e-9);
        let per = phi().perimeter();
        let g: Vec<f64> = [x[0], x[1], y[0], y[1]].iter().map(|&s| d3_param(k, s, per)).collect();
        prop_assert!((fam.mass(&g).unwrap() - m).abs() <= 1e-9);
    }

    #[test]
    fn square_lines_are_d4_equivariant(a in -1.0f64..1.0, b in -1.0f64..1.0, c in -1.2f64..1.2, k in 0usize..8) {
        prop_assume!(a.abs() + b.abs() > 1e-3);
        let s = ConvexPolygon::unit_circle_square();
        let base = line_sweepout_mass(&s, &Line2::new(a, b, -c).unwrap());
        prop_assert!(base.mass <= 2.0 + 1e-9);
        prop_assert!(chain_is_interior(&base, &s));
        let [_, b2, c2, _] = d4_conic(k, [0.0, a, b, c]);
        let moved = line_sweepout_mass(&s, &Line2::new(b2, c2, -c).unwrap());
        prop_assert!((moved.mass - base.mass).abs() <= 1e-9);
    }

    #[test]
    fn hyperbolas_are_bounded_audited_and_d4_equivariant(
        v in prop::array::uniform4(-1.0f64..1.0),
        k in 0usize..8,
    ) {
        prop_assume!(v.iter().map(|x| x.abs()).sum::<f64>() > 1e-3);
        let s = square();
        let slice = hyperbola_sweepout_mass(&s, v).unwrap();
        prop_assert!(slice.chain.mass <= 2.0 * 2f64.sqrt() + 1e-9);
        prop_assert!(slice.audits.iter().all(|a| a.ok), "{:?}", slice.audits);
        prop_assert!(chain_is_interior(&slice.chain, &s.polygon()));
        let moved = hyperbola_sweepout_mass(&s, d4_conic(k, v)).unwrap();
        prop_assert!((moved.chain.mass - slice.chain.mass).abs() <= 1e-9);
    }

    #[test]
    fn plane_sections_are_bounded_and_tetrahedral(
        h in prop::array::uniform4(-1.0f64..1.0),
        perm in Just([0usize, 1, 2, 3]).prop_shuffle(),
    ) {
        let q = tet();
        let Ok(plane) = q.plane_with_vertex_values(h) else { return Ok(()) };
        let Some(m) = plane_sweepout_mass(&q, &plane) else { return Ok(()) };
        prop_assert!(m <= 3.0 * 3f64.sqrt() / 2.0 + 1e-9);
        let hp = [h[perm[0]], h[perm[1]], h[perm[2]], h[perm[3]]];
        let moved = plane_sweepout_mass(&q, &q.plane_with_vertex_values(hp).unwrap()).unwrap();
        prop_assert!((moved - m).abs() <= 1e-9);
    }

    #[test]
    fn phi_is_continuous_at_vertices(v in 0usize..3, s2 in 0.0f64..5.2, side in any::<bool>()) {
        let m = phi();
        let s1 = m.triangle().vertex_arclength(v);
        let at = m.mass(s1, s2);
        let sign = if side { 1.0 } else { -1.0 };
        let errs: Vec<f64> = [1e-3, 1e-4, 1e-5, 1e-6]
            .iter()
            .map(|d| (m.mass(s1 + sign * d, s2) - at).abs())
            .collect();
        prop_assert!(errs.windows(2).all(|w| w[1] <= w[0] + 1e-12), "{errs:?}");
        prop_assert!(errs[3] <= 1e-4, "{errs:?}");
    }
}

proptest! {
    #![proptest_config(config(12))]

    #[test]
    fn nested_grids_never_lose(n in 4usize..24) {
        let fam = Family::phi_t();
        let spec = |per_dim| GridSpec { rounds: 0, ..GridSpec::new(per_dim) };
        let coarse = maximize_mass(&fam, &spec(n)).unwrap();
        let fine = maximize_mass(&fam, &spec(2 * n)).unwrap();
        prop_assert!(fine.best >= coarse.best);
    }
}

#[test]
fn reports_match_their_argmax() {
    for fam in [
        Family::phi_t(),
        Family::lines_s(),
        Family::hyperbola_s(),
        Family::planes_tet(),
    ] {
        let rep = maximize_mass(
            &fam,
            &GridSpec {
                rounds: 12,
                ..GridSpec::new(9)
            },
        )
        .unwrap();
        let again = fam.mass(&rep.argmax.params).unwrap();
        assert!((again - rep.best).abs() <= 1e-12, "{:?}", rep.family);
        assert!(rep.history.windows(2).all(|w| w[1] >= w[0]));
        assert!(rep.max_sampled >= rep.best);
    }
}
