#![allow(dead_code)]

use std::f64::consts::TAU;

use polywidth::geom::{ConvexPolygon, Vec2};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

pub const SEED: u64 = 0x5eed_2024;

pub fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(SEED),
        failure_persistence: None,
        ..Config::default()
    }
}

/// Convex polygon with 3 to 9 vertices on a rotated, shifted ellipse.
pub fn convex_polygon() -> impl Strategy<Value = ConvexPolygon> {
    (
        prop::collection::vec(0.2f64..1.0, 3..10),
        0.0f64..TAU,
        0.3f64..3.0,
        0.3f64..3.0,
        -5.0f64..5.0,
        -5.0f64..5.0,
    )
        .prop_map(|(gaps, rot, rx, ry, cx, cy)| {
            let total: f64 = gaps.iter().sum();
            let mut t = 0.0;
            let pts = gaps
                .iter()
                .map(|g| {
                    t += g / total * TAU;
                    let (x, y) = (rx * t.cos(), ry * t.sin());
                    let (s, c) = rot.sin_cos();
                    Vec2::new(c * x - s * y + cx, s * x + c * y + cy)
                })
                .collect();
            ConvexPolygon::new(pts).expect("points on an ellipse are convex")
        })
}

/// Barycentric weights for an interior point of an `n`-gon.
pub fn interior_point(poly: &ConvexPolygon, weights: &[f64]) -> Vec2 {
    let n = poly.len();
    let w: Vec<f64> = (0..n).map(|i| weights[i % weights.len()] + 0.05).collect();
    let total: f64 = w.iter().sum();
    poly.vertices()
        .iter()
        .zip(&w)
        .fold(Vec2::ZERO, |acc, (v, wi)| acc + *v * (wi / total))
}

pub fn unit(angle: f64) -> Vec2 {
    Vec2::new(angle.cos(), angle.sin())
}
